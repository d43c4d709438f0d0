"""Built-in example algebras and the JSON serialization of user inputs.

File schema (UTF-8 JSON, 1-based indices to match the usual e_1..e_n
notation):

    {
      "dim": n,
      "brackets": [{"i": 1, "j": 2, "k": 4, "c": "-1"}, ...],
      "J": [[..n scalar strings..] x n]            # optional, real entries
      or
      "J_onezero": [[..n strings..] x (n/2)]       # optional, Gaussian entries
    }

Unlisted bracket pairs are zero; ``i < j`` is required and duplicate
(i, j, k) entries are rejected.  Scalar strings follow the grammar of
:mod:`nilcoh.scalars`.

Every catalog entry carries an ``expected`` block of frozen results; the
numeric values in it were first produced by the independent brute-force
oracle in the test suite and only then recorded here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

from .cstruct import ComplexStructure, is_integrable
from .errors import SchemaError, ScalarSyntaxError, ValidationFailure
from .lie import LieAlgebra, from_delta, validate
from .linalg import Matrix
from .scalars import parse_scalar, render_scalar, scalar


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    structures: dict  # name -> ComplexStructure
    notes: dict = field(default_factory=dict)  # name -> provenance note
    expected: dict = field(default_factory=dict)

    def structure(self, name=None):
        if not self.structures:
            raise ValidationFailure(
                "no-structure", f"catalog entry {self.name!r} has no complex structure"
            )
        if name is None:
            name = next(iter(self.structures))
        if name not in self.structures:
            raise SchemaError(
                f"entry {self.name!r} has no structure {name!r}; "
                f"available: {', '.join(self.structures)}"
            )
        return self.structures[name]


def _h7_onezero(lam):
    return Matrix.from_rows(
        [
            [1, "-i", 0, 0, 0, 0],
            [f"i*({lam})", 0, 1, "-i", 0, 0],
            [0, 0, 0, lam, -1, "i"],
        ]
    )


def _binomial_diamond(m):
    return [[comb(m, p) * comb(m, q) for q in range(m + 1)] for p in range(m + 1)]


def _torus(name, m):
    L, J = from_delta(m, 0, {})
    return CatalogEntry(
        name=name,
        algebra=L,
        structures={"std": J},
        notes={"std": "rotation pairing e_{2k-1}, e_{2k}"},
        expected={
            "betti": [comb(2 * m, k) for k in range(2 * m + 1)],
            "nu": 1,
            "center_dim": 2 * m,
            "structures": {
                "std": {
                    "classify": {
                        "abelian": True,
                        "parallelisable": True,
                        "rational": True,
                        "nilpotent_j": True,
                    },
                    "hodge": _binomial_diamond(m),
                    "status": {"verdict": "certified", "criterion": "abelian-J"},
                    "froelicher_stable_page": 0,
                }
            },
        },
    )


def _build_catalog():
    entries = {}
    entries["torus2"] = _torus("torus2", 1)
    entries["torus6"] = _torus("torus6", 3)

    h3 = LieAlgebra.from_brackets(3, {(0, 1): {2: 1}})
    entries["heisenberg3"] = CatalogEntry(
        name="heisenberg3",
        algebra=h3,
        structures={},
        expected={"betti": [1, 2, 2, 1], "nu": 2, "center_dim": 1, "structures": {}},
    )

    ko, jko = from_delta(1, 1, {(0, "vvbar", 0, 0): scalar("-i/2")})
    entries["kodaira"] = CatalogEntry(
        name="kodaira",
        algebra=ko,
        structures={"std": jko},
        notes={"std": "primary Kodaira surface structure, [V, V] = 0"},
        expected={
            "betti": [1, 3, 4, 3, 1],
            "nu": 2,
            "center_dim": 2,
            "structures": {
                "std": {
                    "classify": {
                        "abelian": True,
                        "parallelisable": False,
                        "rational": True,
                        "nilpotent_j": True,
                    },
                    "hodge": [[1, 2, 1], [1, 2, 1], [1, 2, 1]],
                    "status": {"verdict": "certified", "criterion": "abelian-J"},
                    "froelicher_stable_page": 1,
                }
            },
        },
    )

    iw, jiw = from_delta(2, 1, {(0, "vv", 0, 1): -1})
    entries["iwasawa"] = CatalogEntry(
        name="iwasawa",
        algebra=iw,
        structures={"std": jiw},
        notes={"std": "complex Heisenberg group structure, [V, conj V] = 0"},
        expected={
            "betti": [1, 4, 8, 10, 8, 4, 1],
            "nu": 2,
            "center_dim": 2,
            "structures": {
                "std": {
                    "classify": {
                        "abelian": False,
                        "parallelisable": True,
                        "rational": True,
                        "nilpotent_j": True,
                    },
                    "hodge": [
                        [1, 2, 2, 1],
                        [3, 6, 6, 3],
                        [3, 6, 6, 3],
                        [1, 2, 2, 1],
                    ],
                    "status": {"verdict": "certified", "criterion": "parallelisable"},
                    "froelicher_stable_page": 2,
                }
            },
        },
    )

    h7 = LieAlgebra.from_brackets(
        6, {(0, 1): {3: -1}, (0, 2): {4: -1}, (1, 2): {5: -1}}
    )
    h7_hodge = [[1, 2, 2, 1], [1, 4, 5, 2], [2, 5, 4, 1], [1, 2, 2, 1]]

    def h7_block(rational):
        status = (
            {"verdict": "certified", "criterion": "rational-J"}
            if rational
            else {"verdict": "unknown", "criterion": None}
        )
        return {
            "classify": {
                "abelian": False,
                "parallelisable": False,
                "rational": rational,
                "nilpotent_j": True,
            },
            "hodge": h7_hodge,
            "status": status,
            "froelicher_stable_page": 1,
        }

    entries["h7"] = CatalogEntry(
        name="h7",
        algebra=h7,
        structures={
            "J0": ComplexStructure.from_onezero(_h7_onezero("0")),
            "Jhalf": ComplexStructure.from_onezero(_h7_onezero("1/2")),
            "symbolic": ComplexStructure.from_onezero(_h7_onezero("t")),
        },
        notes={
            "J0": "the one-parameter family at 0",
            "Jhalf": "the one-parameter family at 1/2",
            "symbolic": "the one-parameter family at a transcendental value",
        },
        expected={
            "betti": [1, 3, 8, 12, 8, 3, 1],
            "nu": 2,
            "center_dim": 3,
            "structures": {
                "J0": h7_block(True),
                "Jhalf": h7_block(True),
                "symbolic": h7_block(False),
            },
        },
    )

    for entry in entries.values():
        report = validate(entry.algebra)
        if not (report.jacobi_ok and report.nilpotent):
            raise ValidationFailure("catalog", f"bad catalog entry {entry.name}")
        for jname, J in entry.structures.items():
            if not is_integrable(entry.algebra, J):
                raise ValidationFailure(
                    "catalog", f"non-integrable {entry.name}/{jname}"
                )
    return entries


_CATALOG = None


def _catalog():
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return _CATALOG


def names():
    return list(_catalog())


def get(name):
    cat = _catalog()
    if name not in cat:
        raise SchemaError(
            f"unknown catalog entry {name!r}; available: {', '.join(cat)}"
        )
    return cat[name]


# ---------------------------------------------------------------------------
# file i/o
# ---------------------------------------------------------------------------


def _parse_real(text, where):
    s = _parse_any(text, where)
    if not s.is_real():
        raise ValidationFailure("real-required", f"{where}: 'i' not allowed here")
    return s


def _parse_any(text, where):
    if not isinstance(text, str):
        raise SchemaError(f"{where}: scalar must be a string, got {text!r}")
    try:
        return parse_scalar(text)
    except ScalarSyntaxError as exc:
        raise SchemaError(f"{where}: {exc}") from exc
    except ZeroDivisionError as exc:
        raise SchemaError(f"{where}: division by zero") from exc


def from_dict(doc, allow_nonintegrable=False):
    """Build (LieAlgebra, ComplexStructure|None) from a schema dict."""
    if not isinstance(doc, dict):
        raise SchemaError("top level must be a JSON object")
    unknown = set(doc) - {"dim", "brackets", "J", "J_onezero"}
    if unknown:
        raise SchemaError(f"unknown keys: {sorted(unknown)}")
    n = doc.get("dim")
    if not isinstance(n, int) or n < 0:
        raise SchemaError("'dim' must be a non-negative integer")
    entries = doc.get("brackets", [])
    if not isinstance(entries, list):
        raise SchemaError("'brackets' must be a list")
    brackets = {}
    seen = set()
    for pos, item in enumerate(entries):
        if not isinstance(item, dict) or set(item) != {"i", "j", "k", "c"}:
            raise SchemaError(f"brackets[{pos}] must have keys i, j, k, c")
        i, j, k = item["i"], item["j"], item["k"]
        for label, v in (("i", i), ("j", j), ("k", k)):
            if not isinstance(v, int) or not (1 <= v <= n):
                raise SchemaError(f"brackets[{pos}].{label} out of range 1..{n}")
        if i >= j:
            raise SchemaError(f"brackets[{pos}]: need i < j (got {i}, {j})")
        if (i, j, k) in seen:
            raise SchemaError(f"brackets[{pos}]: duplicate entry ({i}, {j}, {k})")
        seen.add((i, j, k))
        c = _parse_real(item["c"], f"brackets[{pos}].c")
        key = (i - 1, j - 1)
        vec = brackets.setdefault(key, {})
        vec[k - 1] = c
    L = LieAlgebra.from_brackets(n, brackets)
    report = validate(L)
    if not report.jacobi_ok:
        triple = tuple(x + 1 for x in report.jacobi_failures[0])
        raise ValidationFailure(
            "jacobi", f"Jacobi identity fails on basis triple {triple}"
        )
    if not report.nilpotent:
        raise ValidationFailure("not-nilpotent", "the algebra is not nilpotent")

    if "J" in doc and "J_onezero" in doc:
        raise SchemaError("give at most one of 'J' and 'J_onezero'")
    J = None
    if "J" in doc:
        rows = doc["J"]
        if (
            not isinstance(rows, list)
            or len(rows) != n
            or any(not isinstance(r, list) or len(r) != n for r in rows)
        ):
            raise SchemaError(f"'J' must be an {n}x{n} array of scalar strings")
        data = [_parse_real(e, "J") for r in rows for e in r]
        J = ComplexStructure.from_matrix(Matrix(n, n, data))
    elif "J_onezero" in doc:
        rows = doc["J_onezero"]
        if n % 2:
            raise SchemaError("'J_onezero' needs even dimension")
        if (
            not isinstance(rows, list)
            or len(rows) != n // 2
            or any(not isinstance(r, list) or len(r) != n for r in rows)
        ):
            raise SchemaError(
                f"'J_onezero' must be an {n // 2}x{n} array of scalar strings"
            )
        data = [_parse_any(e, "J_onezero") for r in rows for e in r]
        J = ComplexStructure.from_onezero(Matrix(n // 2, n, data))
    if J is not None and not is_integrable(L, J):
        if not allow_nonintegrable:
            raise ValidationFailure(
                "non-integrable",
                "J is not integrable (pass allow_nonintegrable=True to load anyway)",
            )
    return L, J


def to_dict(L, J=None):
    """Canonical schema dict for an algebra and optional structure."""
    brackets = []
    for (i, j), vec in sorted(L.bracket_pairs()):
        for k, c in enumerate(vec):
            if not c.is_zero():
                brackets.append(
                    {"i": i + 1, "j": j + 1, "k": k + 1, "c": render_scalar(c)}
                )
    doc = {"dim": L.n, "brackets": brackets}
    if J is not None:
        doc["J"] = [
            [render_scalar(J.matrix[r, c]) for c in range(L.n)] for r in range(L.n)
        ]
    return doc


def load(path, allow_nonintegrable=False):
    """Read and validate a file; fails loudly on schema or math errors."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    return from_dict(doc, allow_nonintegrable=allow_nonintegrable)


def save(path, L, J=None):
    """Write the canonical form; save(load(f)) is idempotent."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_dict(L, J), fh, indent=2, sort_keys=True)
        fh.write("\n")
