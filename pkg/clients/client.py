"""
Client interface for the cavity-scatter system.
"""

from abc import ABC, abstractmethod
from typing import Generic, TypeVar

Result = TypeVar("Result")


class Client(ABC, Generic[Result]):
    """
    A unit of work behind one or more subcommands.

    Model, ensemble and comparison clients return the tables they produced, the output
    client returns the manifest path and the system client returns the exit code.
    """

    @abstractmethod
    def run(self) -> Result:
        pass

    @abstractmethod
    def get_name(self) -> str:
        pass
