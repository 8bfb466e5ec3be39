from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class RunManifest(BaseModel):
    """
    Provenance written beside every CLI output: replaying `argv` with the same
    inputs reproduces the outputs byte for byte. No timestamps are stored.
    """

    subcommand: str
    argv: List[str]
    options: Dict[str, Any]
    seed: Optional[int] = None
    version: str
    inputs: Dict[str, str] = Field(default_factory=dict, description="input path -> sha256")
    outputs: Dict[str, str] = Field(default_factory=dict, description="output path -> sha256")
