"""Built-in example algebras with their expected invariants.

Every entry is re-validated on load and its recorded profile compared with
a fresh computation; a mismatch raises :class:`CatalogError`.
Set ``HOMLIE_CATALOG_DIR`` to a directory of ``*.json`` entries to replace
the built-in list.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .algebra import HomLieAlgebra, abelian, direct_sum, validate, yau_twist
from .linalg import Matrix
from .serialize import algebra_from_doc, algebra_to_doc, loads

ENV_VAR = "HOMLIE_CATALOG_DIR"

SWAP23 = Matrix.from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]])


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: HomLieAlgebra
    expected: dict
    family: str = ""

    def to_doc(self) -> dict:
        return {"name": self.name, "family": self.family,
                "algebra": algebra_to_doc(self.algebra), "expected": self.expected}


def _expected(dim, center_dim, derived_dim, regular=True, stem=False, abelian_=False,
              multiplicative=True) -> dict:
    return {"dim": dim, "center_dim": center_dim, "derived_dim": derived_dim,
            "multiplicative": multiplicative, "regular": regular, "stem": stem,
            "abelian": abelian_}


def _builtin() -> list[CatalogEntry]:
    v = HomLieAlgebra.from_brackets(3, {(0, 1): [0, 1, 0], (0, 2): [0, 0, 1]}, SWAP23, "V-ex310")
    w = HomLieAlgebra.from_brackets(
        4, {(0, 1): [0, 1, 0, 0], (0, 2): [0, 0, 1, 0]},
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], "W-ex310")
    ab1, ab2 = abelian(1), abelian(2)
    heis = HomLieAlgebra.from_brackets(3, {(0, 1): [0, 0, 1]}, None, "heisenberg")
    heis_perm = HomLieAlgebra.from_brackets(3, {(1, 2): [1, 0, 0]}, None, "heisenberg-permuted")
    heis_tw = yau_twist(heis, Matrix.diag([1, 2, 2]), "heisenberg-twisted")
    lie2 = HomLieAlgebra.from_brackets(2, {(0, 1): [0, 1]}, None, "lie-2d")
    sl2 = HomLieAlgebra.from_brackets(
        3, {(0, 1): [0, 2, 0], (0, 2): [0, 0, -2], (1, 2): [1, 0, 0]}, None, "sl2")
    w_lie = w.with_phi(Matrix.identity(4), "W-lie")
    w_sheared = HomLieAlgebra.from_brackets(
        4, {(0, 1): [0, 1, 0, 1], (0, 2): [0, 0, 1, 0]}, None, "W-sheared")
    return [
        CatalogEntry("V-ex310", v, _expected(3, 0, 2, stem=True), "ex310"),
        CatalogEntry("W-ex310", w, _expected(4, 1, 2), "ex310"),
        CatalogEntry("V-plus-abelian1", direct_sum(v, ab1, "V-plus-abelian1"),
                     _expected(4, 1, 2), "ex310"),
        CatalogEntry("V-plus-abelian2", direct_sum(v, ab2, "V-plus-abelian2"),
                     _expected(5, 2, 2), "ex310"),
        CatalogEntry("abelian-1", ab1, _expected(1, 1, 0, abelian_=True), "abelian"),
        CatalogEntry("abelian-2", ab2, _expected(2, 2, 0, abelian_=True), "abelian"),
        CatalogEntry("heisenberg", heis, _expected(3, 1, 1, stem=True), "heisenberg"),
        CatalogEntry("heisenberg-permuted", heis_perm, _expected(3, 1, 1, stem=True), "heisenberg"),
        CatalogEntry("heisenberg-plus-abelian1", direct_sum(heis, ab1, "heisenberg-plus-abelian1"),
                     _expected(4, 2, 1), "heisenberg"),
        CatalogEntry("heisenberg-twisted", heis_tw, _expected(3, 1, 1, stem=True),
                     "heisenberg-twisted"),
        CatalogEntry("lie-2d", lie2, _expected(2, 0, 1, stem=True), "lie-2d"),
        CatalogEntry("sl2", sl2, _expected(3, 0, 3, stem=True), "sl2"),
        CatalogEntry("W-lie", w_lie, _expected(4, 1, 2), "W-lie"),
        CatalogEntry("W-sheared", w_sheared, _expected(4, 1, 2), "W-lie"),
    ]


def profile_fields(a: HomLieAlgebra) -> dict:
    return validate(a).report()


def _self_check(entry: CatalogEntry) -> CatalogEntry:
    actual = profile_fields(entry.algebra)
    for key, want in entry.expected.items():
        if actual.get(key) != want:
            raise CatalogError(
                f"catalog entry {entry.name}: expected {key}={want}, recomputed {actual.get(key)}")
    return entry


def _load_dir(path: Path) -> list[CatalogEntry]:
    out = []
    for f in sorted(path.glob("*.json")):
        doc = loads(f.read_text(encoding="utf-8"))
        try:
            out.append(CatalogEntry(doc["name"], algebra_from_doc(doc["algebra"]),
                                    dict(doc.get("expected", {})), doc.get("family", "")))
        except KeyError as exc:
            raise CatalogError(f"{f}: missing field {exc}") from exc
    return out


def load_catalog() -> dict[str, CatalogEntry]:
    override = os.environ.get(ENV_VAR)
    entries = _load_dir(Path(override)) if override else _builtin()
    return {e.name: _self_check(e) for e in entries}


def get(name: str) -> HomLieAlgebra:
    catalog = load_catalog()
    if name not in catalog:
        raise KeyError(f"no catalog entry named {name!r}")
    return catalog[name].algebra
