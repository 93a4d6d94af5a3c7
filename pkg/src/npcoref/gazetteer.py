"""First-name gender gazetteer.

File format: one ``token<TAB>M|F`` entry per line, UTF-8. Blank lines and
lines starting with ``#`` are ignored. Tokens are case-folded on load.
"""

from __future__ import annotations

import enum
from importlib import resources
from pathlib import Path
from typing import Mapping

from .model import MalformedInputError


class Gender(str, enum.Enum):
    M = "M"
    F = "F"
    UNISEX = "Unisex"

    def compatible(self, other: "Gender") -> bool:
        return self is Gender.UNISEX or other is Gender.UNISEX or self is other


class Gazetteer:
    def __init__(self, entries: Mapping[str, Gender] = ()):
        self._entries = {k.casefold(): Gender(v) for k, v in dict(entries).items()}

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, token: str) -> bool:
        return token.casefold() in self._entries

    def lookup(self, token: str) -> Gender:
        return self._entries.get(token.casefold(), Gender.UNISEX)

    @classmethod
    def parse(cls, text: str, source: str = "<gazetteer>") -> "Gazetteer":
        entries = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or parts[1].strip() not in ("M", "F"):
                raise MalformedInputError(f"{source}: line {lineno}: expected 'token<TAB>M|F'")
            entries[parts[0].strip()] = Gender(parts[1].strip())
        return cls(entries)

    @classmethod
    def load(cls, path) -> "Gazetteer":
        return cls.parse(Path(path).read_text(encoding="utf-8"), str(path))

    @classmethod
    def bundled(cls) -> "Gazetteer":
        text = resources.files("npcoref").joinpath("data/gazetteer_sample.tsv").read_text(encoding="utf-8")
        return cls.parse(text, "gazetteer_sample.tsv")
