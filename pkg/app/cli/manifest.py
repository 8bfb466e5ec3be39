"""
Run manifests: the provenance record written beside every CLI output
"""
import argparse
import json
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

from app.cli.options import CommandResult
from app.core.config import settings
from app.core.exceptions import ValidationError
from app.core.logging_config import get_logger
from app.ingest.checksums import sha256_file
from app.models.manifest import RunManifest

logger = get_logger("app.cli.manifest")

MANIFEST_SUFFIX = ".manifest.json"
_INTERNAL_OPTIONS = {"handler", "command"}


def manifest_path(output: Union[str, Path]) -> Path:
    return Path(f"{output}{MANIFEST_SUFFIX}")


def _plain(value: Any) -> Any:
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "tolist"):
        return value.tolist()
    return value


def build_manifest(args: argparse.Namespace, argv: Sequence[str], result: CommandResult) -> RunManifest:
    options = {k: _plain(v) for k, v in sorted(vars(args).items()) if k not in _INTERNAL_OPTIONS}
    return RunManifest(
        subcommand=args.command,
        argv=list(argv),
        options=options,
        seed=result.seed,
        version=settings.VERSION,
        inputs={str(path): sha256_file(path) for path in result.inputs},
        outputs={str(path): sha256_file(path) for path in result.outputs},
    )


def write_manifests(manifest: RunManifest) -> List[Path]:
    """One identical manifest beside each output file"""
    text = json.dumps(manifest.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"
    written = []
    for output in manifest.outputs:
        path = manifest_path(output)
        path.write_text(text, encoding="utf-8")
        written.append(path)
    logger.debug(f"Wrote {len(written)} manifest(s) for {manifest.subcommand}")
    return written


def load_manifest(path: Union[str, Path]) -> RunManifest:
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"manifest not found: {path}")
    try:
        data: Dict[str, Any] = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path} is not a JSON manifest: {e}") from e
    return RunManifest.model_validate(data)


def changed_files(digests: Dict[str, str]) -> List[str]:
    """Recorded files that are missing or whose digest differs"""
    return [name for name, digest in digests.items() if not Path(name).exists() or sha256_file(name) != digest]
