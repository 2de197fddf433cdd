"""
Client for writing run outputs: CSV or JSON tables, binary figures and the run manifest.

All files of a run are staged in a hidden directory inside the output directory and moved into
place only when every file has been written; the manifest goes last. A failure removes the
staged and already-moved files, so a directory never holds a partial run.
"""

import csv
import hashlib
import io
import json
import math
import os
import shutil
import sys
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

import control
from clients.client import Client
from clients.logging_config import output_logger as logger
from errors import OutputError

SEED_POLICY = "numpy default_rng(splitmix64(master_seed + 0x9E3779B97F4A7C15 * (cavity_id + 1)))"


@dataclass
class Table:
    """Named table; `name` is the file stem, e.g. "resonances"."""

    name: str
    columns: List[str]
    rows: List[Sequence[Any]] = field(default_factory=list)

    def records(self) -> List[Dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    def column(self, name: str) -> List[Any]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def format_value(value: Any) -> str:
    """Locale-free text for one CSV cell; reals carry 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{control.float_digits}g}"
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    return value


def render_table(table: Table, fmt: str) -> bytes:
    """Serialize a table as CSV (LF line endings) or as a JSON list of records."""
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(table.columns)
        writer.writerows([format_value(v) for v in row] for row in table.rows)
        return buffer.getvalue().encode("utf-8")
    if fmt == "json":
        records = [{k: _json_value(v) for k, v in zip(table.columns, row)} for row in table.rows]
        return (json.dumps(records, indent=2, allow_nan=False) + "\n").encode("utf-8")
    raise OutputError(f"Unknown output format '{fmt}'. Available: csv, json")


def sha256_bytes(payload: bytes) -> str:
    return hashlib.sha256(payload).hexdigest()


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class OutputClient(Client[Path]):
    """Single writer for one run: queue tables and figures, then run() commits them with a manifest."""

    def __init__(
        self,
        out_dir: Path,
        command: str,
        fmt: str = None,
        config: Optional[Dict[str, Any]] = None,
        master_seed: Optional[int] = None,
    ):
        logger.info("Initializing OutputClient")
        self.out_dir = Path(out_dir)
        self.command = command
        self.fmt = fmt or control.output_format
        if self.fmt not in ("csv", "json"):
            raise OutputError(f"Unknown output format '{self.fmt}'. Available: csv, json")
        self.config = config or {}
        self.master_seed = master_seed
        self.started_at = _utc_now()
        self.tables: List[Table] = []
        self.binaries: Dict[str, bytes] = {}
        self.cavities: List[Dict[str, Any]] = []
        self.summary: Dict[str, Any] = {}
        logger.info("OutputClient initialized successfully")

    def get_name(self) -> str:
        return "OutputClient"

    def add_table(self, table: Table) -> None:
        self.tables.append(table)

    def add_binary(self, name: str, payload: bytes) -> None:
        self.binaries[name] = payload

    def set_cavities(self, cavities: List[Dict[str, Any]]) -> None:
        self.cavities = list(cavities)

    def update_summary(self, **values: Any) -> None:
        self.summary.update({k: _json_value(v) for k, v in values.items()})

    def file_names(self) -> List[str]:
        return [f"{t.name}.{self.fmt}" for t in self.tables] + list(self.binaries)

    def build_manifest(self, inventory: List[Dict[str, Any]]) -> Dict[str, Any]:
        return {
            "schema_version": control.MANIFEST_SCHEMA_VERSION,
            "tool": control.TOOL_NAME,
            "tool_version": control.TOOL_VERSION,
            "command": self.command,
            "format": self.fmt,
            "config": self.config,
            "master_seed": self.master_seed,
            "seed_policy": SEED_POLICY,
            "started_at": self.started_at,
            "finished_at": _utc_now(),
            "cavities": self.cavities,
            "summary": self.summary,
            "files": inventory,
        }

    def run(self) -> Path:
        """
        Write every queued file and the manifest.

        Returns:
            Path of manifest.json

        Raises:
            OutputError: If any file cannot be written; nothing of this run is left behind
        """
        payloads: Dict[str, bytes] = {f"{t.name}.{self.fmt}": render_table(t, self.fmt) for t in self.tables}
        payloads.update(self.binaries)
        if "manifest.json" in payloads:
            raise OutputError("manifest.json is reserved")

        inventory = [{"name": name, "bytes": len(data), "sha256": sha256_bytes(data)} for name, data in payloads.items()]
        manifest = json.dumps(self.build_manifest(inventory), indent=2, sort_keys=True) + "\n"
        payloads["manifest.json"] = manifest.encode("utf-8")

        staging: Optional[Path] = None
        moved: List[Path] = []
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            staging = Path(tempfile.mkdtemp(prefix=".partial-", dir=self.out_dir))
            for name, data in payloads.items():
                with open(staging / name, "wb") as handle:
                    handle.write(data)
            for name in payloads:
                target = self.out_dir / name
                os.replace(staging / name, target)
                moved.append(target)
        except OSError as e:
            logger.error(f"Error writing outputs to {self.out_dir}: {str(e)}")
            for path in moved:
                path.unlink(missing_ok=True)
            raise OutputError(f"Failed to write outputs to {self.out_dir}: {str(e)}")
        finally:
            if staging is not None:
                shutil.rmtree(staging, ignore_errors=True)

        logger.info(f"Wrote {len(payloads)} files to {self.out_dir}")
        return self.out_dir / "manifest.json"


def read_manifest(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise OutputError(f"Failed to read manifest {path}: {str(e)}")
