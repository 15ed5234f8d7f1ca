"""Load curated Hecke eigenvalue data and turn it into Frobenius charpolys.

A dataset file describes one modular curve reduced at one good prime ell:
per newform orbit, the charpoly h of the ell-th Hecke eigenvalue and its
multiplicity in the Jacobian.  Each orbit contributes
(x^2 - a x + ell) per eigenvalue a, assembled by hecke_to_frobenius and
multiplied out; an optional base-change exponent moves the result from
F_ell to F_{ell^k}.

Nothing is fetched at runtime: files are checked into the repository with
a provenance header saying how they were computed.  The code validates
what it can (genus bookkeeping, eigenvalue size bounds, the palindromic
constraint of the result); which orbits belong to which curve is the
curator's responsibility.

Grammar (UTF-8, line-oriented, '#' comments):

    curve_id=<string>
    expected_genus=<int>
    ell=<prime>
    base_change_k=<int, default 1>
    record label=<string> level=<int> al=<+1|-1> h=<c0,c1,...,1> mult=<int>

Polynomial coefficients ascend; the final coefficient must be 1 (monic).
"""

from __future__ import annotations

from dataclasses import dataclass

from .weil import (
    IntPolynomial,
    WeilPolynomial,
    _is_prime,
    hecke_to_frobenius,
    poly_product,
    power_sums,
    weil_base_change,
    weil_validate,
)


class DatasetError(ValueError):
    """Malformed or inconsistent Hecke dataset."""


@dataclass(frozen=True)
class HeckeRecord:
    """One newform orbit: charpoly of a_ell plus bookkeeping."""

    label: str
    level: int
    al_sign: int
    h: IntPolynomial
    mult: int


@dataclass(frozen=True)
class CurveDataset:
    """All orbits contributing to one curve's Jacobian at one prime ell."""

    curve_id: str
    expected_genus: int
    ell: int
    records: tuple[HeckeRecord, ...]
    base_change_k: int = 1

    @property
    def q(self) -> int:
        return self.ell ** self.base_change_k


def _check_hecke_weil_bound(rec: HeckeRecord, ell: int) -> None:
    """Necessary size condition: if all eigenvalues satisfy |a| <= 2 sqrt(ell),
    then |s_n| <= deg * (2 sqrt(ell))^n for every power sum of h."""
    d = rec.h.degree
    s = power_sums(rec.h, 2 * d)
    for n, sn in enumerate(s, start=1):
        if sn * sn > d * d * (4 * ell) ** n:
            raise DatasetError(
                f"record {rec.label!r}: power sum s_{n}={sn} violates the "
                f"eigenvalue bound |a| <= 2*sqrt({ell})"
            )


def parse_dataset(text: str) -> CurveDataset:
    """Parse and validate a dataset file; errors carry line numbers."""
    header: dict[str, str] = {}
    records: list[HeckeRecord] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("record"):
            kv = {}
            for tok in line.split()[1:]:
                if "=" not in tok:
                    raise DatasetError(f"line {lineno}: expected key=value, got {tok!r}")
                key, val = tok.split("=", 1)
                kv[key] = val
            missing = {"label", "level", "al", "h", "mult"} - set(kv)
            if missing:
                raise DatasetError(f"line {lineno}: record missing {sorted(missing)}")
            if kv["al"] not in ("+1", "-1", "1"):
                raise DatasetError(f"line {lineno}: al must be +1 or -1")
            try:
                coeffs = tuple(int(c) for c in kv["h"].split(","))
            except ValueError as exc:
                raise DatasetError(f"line {lineno}: bad coefficient list: {exc}") from exc
            h = IntPolynomial(coeffs)
            if not h.is_monic() or h.degree < 1 or len(coeffs) != h.degree + 1:
                raise DatasetError(
                    f"line {lineno}: h must be monic (final coefficient 1), degree >= 1"
                )
            try:
                records.append(
                    HeckeRecord(
                        label=kv["label"],
                        level=int(kv["level"]),
                        al_sign=1 if kv["al"] in ("+1", "1") else -1,
                        h=h,
                        mult=int(kv["mult"]),
                    )
                )
            except ValueError as exc:
                raise DatasetError(f"line {lineno}: {exc}") from exc
        elif "=" in line:
            key, val = line.split("=", 1)
            key, val = key.strip(), val.strip()
            if key in header:
                raise DatasetError(f"line {lineno}: duplicate header key {key!r}")
            header[key] = val
        else:
            raise DatasetError(f"line {lineno}: unrecognized line {line!r}")
    for key in ("curve_id", "expected_genus", "ell"):
        if key not in header:
            raise DatasetError(f"missing header line {key}=...")
    try:
        expected_genus = int(header["expected_genus"])
        ell = int(header["ell"])
        k = int(header.get("base_change_k", "1"))
    except ValueError as exc:
        raise DatasetError(f"bad header value: {exc}") from exc
    if not _is_prime(ell):
        raise DatasetError(f"ell={ell} is not prime")
    if k < 1:
        raise DatasetError("base_change_k must be >= 1")
    if not records:
        raise DatasetError("dataset has no records")
    total = 0
    for rec in records:
        if rec.mult < 1:
            raise DatasetError(f"record {rec.label!r}: mult must be >= 1")
        if rec.level % ell == 0:
            raise DatasetError(
                f"record {rec.label!r}: ell={ell} divides level {rec.level}"
            )
        _check_hecke_weil_bound(rec, ell)
        total += rec.mult * rec.h.degree
    if total != expected_genus:
        raise DatasetError(
            f"genus mismatch: records total {total}, expected_genus={expected_genus}"
        )
    return CurveDataset(
        curve_id=header["curve_id"],
        expected_genus=expected_genus,
        ell=ell,
        records=tuple(records),
        base_change_k=k,
    )


def assemble(ds: CurveDataset) -> WeilPolynomial:
    """Frobenius charpoly over F_{ell^k} for the dataset's curve."""
    factors = [hecke_to_frobenius(rec.h, ds.ell, rec.mult) for rec in ds.records]
    W = poly_product(factors)
    W = weil_base_change(W, ds.base_change_k)
    problem = weil_validate(W)
    if problem is not None:
        raise DatasetError(f"assembled polynomial invalid: {problem}")
    if W.genus != ds.expected_genus:
        raise DatasetError(
            f"assembled genus {W.genus} != expected {ds.expected_genus}"
        )
    return W


def load_dataset(path) -> CurveDataset:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dataset(fh.read())
