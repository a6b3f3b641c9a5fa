"""Group catalog: JSON-lines entries naming how to build each group.

One JSON object per line; blank lines and lines starting with '#' are
skipped.  Recognised construction kinds and their fields:

    {"kind": "cyclic",        "name": ..., "order": n}
    {"kind": "dihedral",      "name": ..., "order": n}        # n even
    {"kind": "quaternion8",   "name": ...}
    {"kind": "extraspecial",  "name": ..., "p": p}            # odd p, order p^3, exponent p
    {"kind": "table",         "name": ..., "table": [[...]]}
    {"kind": "permutations",  "name": ..., "degree": d, "generators": [[...]]}
    {"kind": "direct_product","name": ..., "factors": [names]}
    {"kind": "wreath_cyclic", "name": ..., "p": p, "q": q}
    {"kind": "semidirect",    "name": ..., "parts": [n, h],
                              "action": {"<h-index>": [perm of n indices]}}

Semidirect actions may be given on a generating subset of the acting
group; the remaining automorphisms are filled in by composition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import (
    CatalogParseError,
    NotHomomorphismError,
    UnknownConstructionError,
    UnresolvedReferenceError,
)
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    cyclic_group,
    dihedral_group,
    direct_product,
    extraspecial_exponent_p,
    from_multiplication_table,
    from_permutation_generators,
    quaternion_group8,
    semidirect_product,
    wreath_cyclic,
)

_KINDS = {"cyclic", "dihedral", "quaternion8", "extraspecial", "table",
          "permutations", "direct_product", "wreath_cyclic", "semidirect"}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    params: dict
    line: int


def load_catalog(path: str | Path) -> list[CatalogEntry]:
    """Parse a catalog file into validated entries (names unique,
    kinds known; references are resolved at build time)."""
    entries: list[CatalogEntry] = []
    seen: set[str] = set()
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CatalogParseError(lineno, f"invalid JSON ({exc.msg})")
        if not isinstance(obj, dict):
            raise CatalogParseError(lineno, "entry must be a JSON object")
        name = obj.get("name")
        kind = obj.get("kind")
        if not isinstance(name, str) or not name:
            raise CatalogParseError(lineno, "entry needs a 'name' string")
        if kind not in _KINDS:
            raise UnknownConstructionError(
                f"line {lineno}: unknown construction kind {kind!r}")
        if name in seen:
            raise CatalogParseError(lineno, f"duplicate name {name!r}")
        seen.add(name)
        params = {k: v for k, v in obj.items() if k not in ("name", "kind")}
        entries.append(CatalogEntry(name=name, kind=kind, params=params,
                                    line=lineno))
    return entries


def shipped_catalog_path() -> Path:
    return Path(resources.files("lienilp").joinpath("data/catalog.jsonl"))


def load_shipped_catalog() -> list[CatalogEntry]:
    return load_catalog(shipped_catalog_path())


def _expand_action(h: FiniteGroup, n_order: int, given: dict) -> dict:
    """Complete a generator-indexed action to all of h by composition."""
    acts: dict[int, np.ndarray] = {0: np.arange(n_order, dtype=np.int64)}
    for key, perm in given.items():
        j = int(key)
        arr = np.asarray(perm, dtype=np.int64)
        if arr.shape != (n_order,):
            raise NotHomomorphismError(
                f"action image for element {j} has length {arr.size}, "
                f"expected {n_order}")
        if j in acts and not np.array_equal(acts[j], arr):
            raise NotHomomorphismError(
                f"conflicting action images for element {j}")
        acts[j] = arr
    changed = True
    while changed and len(acts) < h.order:
        changed = False
        for j in list(acts):
            for k in list(acts):
                jk = h.multiply(j, k)
                comp = acts[j][acts[k]]
                if jk not in acts:
                    acts[jk] = comp
                    changed = True
                elif not np.array_equal(acts[jk], comp):
                    raise NotHomomorphismError(
                        f"action is not multiplicative at ({j}, {k})")
    if len(acts) < h.order:
        raise NotHomomorphismError(
            "action images do not cover the acting group (keys must "
            "generate it)")
    return acts


class Catalog:
    """Entries indexed by name, with memoised recursive building."""

    def __init__(self, entries: list[CatalogEntry], *,
                 cap: int = DEFAULT_ORDER_CAP):
        self.entries = list(entries)
        self.by_name = {e.name: e for e in self.entries}
        self.cap = cap
        self._built: dict[str, FiniteGroup] = {}

    @classmethod
    def load(cls, path: str | Path | None = None, *,
             cap: int = DEFAULT_ORDER_CAP) -> "Catalog":
        entries = (load_catalog(path) if path is not None
                   else load_shipped_catalog())
        return cls(entries, cap=cap)

    def build(self, name: str) -> FiniteGroup:
        return self._build(name, ())

    def build_entry(self, entry: CatalogEntry) -> FiniteGroup:
        if entry.name in self.by_name:
            return self.build(entry.name)
        return _construct(entry, self, ())

    def _build(self, name: str, stack: tuple[str, ...]) -> FiniteGroup:
        if name in self._built:
            return self._built[name]
        if name not in self.by_name:
            chain = " -> ".join(stack + (name,))
            raise UnresolvedReferenceError(f"unknown entry {chain!r}")
        if name in stack:
            chain = " -> ".join(stack + (name,))
            raise UnresolvedReferenceError(f"cyclic reference {chain}")
        group = _construct(self.by_name[name], self, stack + (name,))
        self._built[name] = group
        return group


def build(entry: CatalogEntry, catalog: Catalog) -> FiniteGroup:
    """Build one entry, resolving references through the catalog."""
    return catalog.build_entry(entry)


def _require(entry: CatalogEntry, key: str):
    if key not in entry.params:
        raise CatalogParseError(
            entry.line, f"{entry.kind} entry {entry.name!r} needs {key!r}")
    return entry.params[key]


def _construct(entry: CatalogEntry, catalog: Catalog,
               stack: tuple[str, ...]) -> FiniteGroup:
    kind = entry.kind
    cap = catalog.cap
    if kind == "cyclic":
        return cyclic_group(int(_require(entry, "order")), cap=cap)
    if kind == "dihedral":
        return dihedral_group(int(_require(entry, "order")), cap=cap)
    if kind == "quaternion8":
        return quaternion_group8(cap=cap)
    if kind == "extraspecial":
        return extraspecial_exponent_p(int(_require(entry, "p")), cap=cap)
    if kind == "table":
        return from_multiplication_table(_require(entry, "table"), cap=cap)
    if kind == "permutations":
        return from_permutation_generators(
            int(_require(entry, "degree")), _require(entry, "generators"),
            cap=cap)
    if kind == "wreath_cyclic":
        return wreath_cyclic(int(_require(entry, "p")),
                             int(_require(entry, "q")), cap=cap)
    if kind == "direct_product":
        names = _require(entry, "factors")
        if not isinstance(names, list) or len(names) < 2:
            raise CatalogParseError(
                entry.line, "direct_product needs at least two factors")
        parts = [catalog._build(n, stack) for n in names]
        out = parts[0]
        for nxt in parts[1:]:
            out = direct_product(out, nxt, cap=cap)
        return out
    if kind == "semidirect":
        parts = _require(entry, "parts")
        if not isinstance(parts, list) or len(parts) != 2:
            raise CatalogParseError(
                entry.line, "semidirect needs parts = [normal, acting]")
        n = catalog._build(parts[0], stack)
        h = catalog._build(parts[1], stack)
        acts = _expand_action(h, n.order, _require(entry, "action"))
        return semidirect_product(n, h, acts, cap=cap)
    raise UnknownConstructionError(f"unknown construction kind {kind!r}")
