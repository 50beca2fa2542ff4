"""Code-spec JSON documents: everything needed to rebuild ``H`` bit-exactly."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .construct import ParityCheck, build_parity_check, cauchy_from_elements
from .errors import FieldTooSmallError, InvalidSpecError, ParameterError, RhoNotFoundError
from .gf import Field, get_field
from .mds import DEFAULT_MAX_SUBSETS, search_rho
from .params import CodeParams, derive_params

log = logging.getLogger(__name__)

SPEC_VERSION = 1


@dataclass(frozen=True)
class CodeSpec:
    n: int
    k: int
    d: int
    field_width: int
    reduction_poly: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    rho: int
    search: dict | None = dc_field(default=None, compare=False)

    @property
    def params(self) -> CodeParams:
        return derive_params(self.n, self.k, self.d)

    @property
    def field(self) -> Field:
        return get_field(self.field_width, self.reduction_poly)

    def build(self) -> ParityCheck:
        cauchy = cauchy_from_elements(self.field, self.a, self.b)
        return build_parity_check(self.params, self.field, self.rho, cauchy)

    def to_dict(self) -> dict:
        doc = {
            "version": SPEC_VERSION,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "field_width": self.field_width,
            "reduction_poly_hex": f"0x{self.reduction_poly:x}",
            "a": list(self.a),
            "b": list(self.b),
            "rho": self.rho,
            "params": self.params.to_dict(),
        }
        if self.search is not None:
            doc["search"] = dict(self.search)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def from_dict(cls, doc: dict) -> CodeSpec:
        """Parse and validate; any problem raises :class:`InvalidSpecError`."""
        try:
            if doc.get("version") != SPEC_VERSION:
                raise InvalidSpecError(f"unsupported spec version {doc.get('version')!r}")
            spec = cls(
                n=int(doc["n"]),
                k=int(doc["k"]),
                d=int(doc["d"]),
                field_width=int(doc["field_width"]),
                reduction_poly=int(str(doc["reduction_poly_hex"]), 16),
                a=tuple(int(v) for v in doc["a"]),
                b=tuple(int(v) for v in doc["b"]),
                rho=int(doc["rho"]),
                search=doc.get("search"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidSpecError):
                raise
            raise InvalidSpecError(f"malformed code spec: {exc}") from exc
        spec.validate(doc.get("params"))
        return spec

    def validate(self, stored_params: dict | None = None) -> None:
        try:
            p = self.params
            f = self.field
        except ParameterError as exc:
            raise InvalidSpecError(str(exc)) from exc
        if stored_params is not None and stored_params != p.to_dict():
            raise InvalidSpecError(f"stored params {stored_params} disagree with {p.to_dict()}")
        if not 0 < self.rho < f.order:
            raise InvalidSpecError(f"rho must be a nonzero element of GF(2^{f.width}), got {self.rho}")
        if len(self.a) != p.n - p.k or len(self.b) != p.n:
            raise InvalidSpecError(
                f"need {p.n - p.k} a-elements and {p.n} b-elements, "
                f"got {len(self.a)} and {len(self.b)}"
            )
        elems = self.a + self.b
        if any(not 0 <= v < f.order for v in elems):
            raise InvalidSpecError("Cauchy element outside the field")
        if len(set(elems)) != len(elems):
            raise InvalidSpecError("Cauchy elements are not pairwise distinct")

    @classmethod
    def from_json(cls, text: str) -> CodeSpec:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidSpecError(f"code spec is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise InvalidSpecError("code spec must be a JSON object")
        return cls.from_dict(doc)

    @classmethod
    def read(cls, path: str | Path) -> CodeSpec:
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def generate_spec(
    n: int,
    k: int,
    d: int,
    width: int = 8,
    *,
    max_subsets: int | None = DEFAULT_MAX_SUBSETS,
) -> CodeSpec:
    """Find a certified rho, escalating from GF(2^8) to GF(2^16) when needed."""
    p = derive_params(n, k, d)
    widths = [width] if width == 16 else [width, 16]
    tried: list[int] = []
    last: Exception | None = None
    for w in widths:
        tried.append(w)
        f = get_field(w)
        try:
            found = search_rho(p, f, max_subsets=max_subsets)
        except (FieldTooSmallError, RhoNotFoundError) as exc:
            log.info("GF(2^%d) failed: %s", w, exc)
            last = exc
            continue
        a = tuple(found.parity_check.cauchy.a)
        b = tuple(found.parity_check.cauchy.b)
        search = {
            "widths_tried": tried,
            "escalated": w != width,
            "rho_tries": found.tries,
            "degree_bound": found.degree_bound,
        }
        return CodeSpec(n, k, d, w, f.poly, a, b, found.rho, search)
    assert last is not None
    raise last
