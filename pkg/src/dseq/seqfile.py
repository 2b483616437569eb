"""Sequence files: JSON documents binding a group spec, a sequence kind, and
the element list, optionally extended with a construction certificate."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .groups import FiniteGroup, build_group

__all__ = ["SequenceFile", "SEQUENCE_KINDS"]

SEQUENCE_KINDS = ("dseq", "sequencing", "terrace", "rseq")


@dataclass
class SequenceFile:
    """A group spec string, a sequence kind, and the element index list."""

    group: str
    kind: str
    items: list[int]
    certificate: dict | None = None

    def __post_init__(self) -> None:
        if self.kind not in SEQUENCE_KINDS:
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        self.items = [int(x) for x in self.items]

    def build_group(self) -> FiniteGroup:
        return build_group(self.group)

    def to_dict(self) -> dict:
        doc: dict = {"group": self.group, "kind": self.kind, "items": self.items}
        if self.certificate is not None:
            doc["certificate"] = self.certificate
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @staticmethod
    def from_dict(doc: dict) -> "SequenceFile":
        try:
            return SequenceFile(
                group=str(doc["group"]),
                kind=str(doc["kind"]),
                items=list(doc["items"]),
                certificate=doc.get("certificate"),
            )
        except KeyError as exc:
            raise ValueError(f"sequence file is missing field {exc}") from exc

    @staticmethod
    def loads(text: str) -> "SequenceFile":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"sequence file is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ValueError("sequence file must be a JSON object")
        return SequenceFile.from_dict(doc)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @staticmethod
    def read(path: str | Path) -> "SequenceFile":
        return SequenceFile.loads(Path(path).read_text(encoding="utf-8"))
