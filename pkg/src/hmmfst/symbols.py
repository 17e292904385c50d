"""Interned alphabet shared by transducers, HMMs and lexicons."""

from __future__ import annotations

import re
from typing import Iterable, Iterator

EPSILON = 0
ANY = 1
BOUNDARY = 2

EPSILON_NAME = "<eps>"
ANY_NAME = "?"
BOUNDARY_NAME = "<#>"

KINDS = ("epsilon", "any", "boundary", "tag", "class", "marker")

_MARKER_RE = re.compile(r"^(?P<base>.+)-(?P<side>[BA])(?P<k>[1-9][0-9]*)$")


class SymbolError(ValueError):
    pass


def marker_name(base: str, side: str, k: int) -> str:
    if side not in ("B", "A") or k < 1:
        raise SymbolError(f"bad marker side/distance: {side!r}, {k}")
    return f"{base}-{side}{k}"


def parse_marker(name: str) -> tuple[str, str, int]:
    """Split ``CONJ-B2`` into ``("CONJ", "B", 2)``."""
    m = _MARKER_RE.match(name)
    if m is None:
        raise SymbolError(f"not a marker name: {name!r}")
    return m["base"], m["side"], int(m["k"])


class SymbolTable:
    """Bidirectional name <-> id map with a kind per symbol.

    Ids 0, 1 and 2 are always epsilon, ANY and the sentence boundary.
    Once frozen the table refuses new symbols; complement and the ``?``
    wildcard are only defined against a frozen (closed) alphabet.
    """

    def __init__(self):
        self._names: list[str] = []
        self._kinds: list[str] = []
        self._ids: dict[str, int] = {}
        self._markers: dict[int, tuple[int, str, int]] = {}
        self._frozen = False
        self._add(EPSILON_NAME, "epsilon")
        self._add(ANY_NAME, "any")
        self._add(BOUNDARY_NAME, "boundary")

    def _add(self, name, kind):
        sid = len(self._names)
        self._names.append(name)
        self._kinds.append(kind)
        self._ids[name] = sid
        return sid

    def add(self, name: str, kind: str) -> int:
        if kind not in ("tag", "class", "marker"):
            raise SymbolError(f"cannot add symbol of kind {kind!r}")
        if not name or any(ch.isspace() for ch in name):
            raise SymbolError(f"symbol names must be non-empty without whitespace: {name!r}")
        if name in self._ids:
            sid = self._ids[name]
            if self._kinds[sid] != kind:
                raise SymbolError(f"{name!r} already registered as {self._kinds[sid]}")
            return sid
        if self._frozen:
            raise SymbolError(f"table is frozen; cannot add {name!r}")
        if kind == "marker":
            base, side, k = parse_marker(name)
            base_id = self._ids.get(base)
            if base_id is None or self._kinds[base_id] not in ("tag", "class", "boundary"):
                raise SymbolError(f"marker {name!r} has unknown base {base!r}")
            sid = self._add(name, kind)
            self._markers[sid] = (base_id, side, k)
            return sid
        return self._add(name, kind)

    def add_marker(self, base: int, side: str, k: int) -> int:
        return self.add(marker_name(self._names[base], side, k), "marker")

    def freeze(self) -> "SymbolTable":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    def copy(self) -> "SymbolTable":
        """Unfrozen copy; existing ids are preserved."""
        new = SymbolTable.__new__(SymbolTable)
        new._names = list(self._names)
        new._kinds = list(self._kinds)
        new._ids = dict(self._ids)
        new._markers = dict(self._markers)
        new._frozen = False
        return new

    def lookup(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise SymbolError(f"unknown symbol {name!r}") from None

    def get(self, name: str, default=None):
        return self._ids.get(name, default)

    def name(self, sid: int) -> str:
        self.check(sid)
        return self._names[sid]

    def kind(self, sid: int) -> str:
        self.check(sid)
        return self._kinds[sid]

    def check(self, sid: int) -> None:
        if not isinstance(sid, int) or not 0 <= sid < len(self._names):
            raise SymbolError(f"unknown symbol id {sid!r}")

    def marker_info(self, sid: int) -> tuple[int, str, int]:
        """(base id, side "B"/"A", distance) of a marker symbol."""
        try:
            return self._markers[sid]
        except KeyError:
            raise SymbolError(f"{sid} is not a marker") from None

    def of_kind(self, *kinds: str) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(self._kinds) if k in kinds)

    @property
    def sigma(self) -> tuple[int, ...]:
        """Every real symbol: the expansion of ``?``."""
        if not self._frozen:
            raise SymbolError("alphabet is open; freeze the table first")
        return (BOUNDARY,) + tuple(range(3, len(self._names)))

    def __len__(self):
        return len(self._names)

    def __iter__(self) -> Iterator[tuple[int, str, str]]:
        return iter(zip(range(len(self._names)), self._kinds, self._names))

    def __contains__(self, name):
        return name in self._ids

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SymbolTable):
            return NotImplemented
        return self._names == other._names and self._kinds == other._kinds

    def compatible(self, other: "SymbolTable") -> bool:
        return self == other

    def names(self, ids: Iterable[int]) -> list[str]:
        return [self.name(i) for i in ids]

    def __repr__(self):
        state = "frozen" if self._frozen else "open"
        return f"<SymbolTable {len(self)} symbols, {state}>"
