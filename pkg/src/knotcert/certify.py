"""Verifiers for surface certificates built on pushoff words.

A certificate fixes a genus-g surface with dual generators ordered
x_1, y_1, ..., x_g, y_g (indices 1..2g, so x_i = 2i-1 and y_i = 2i),
pushoff words for its basis curves, and the integers the definitions
quantify over.  The verifiers check every condition that is decidable
from the word data (quotient and normal-closure memberships, the
q-value arithmetic) and treat the geometric hypotheses (regular spine,
geometric unrelatedness, admissibility, simplicity) as asserted flags;
reports keep the two kinds of condition separate, and a certificate
whose algebra passes but whose assertions are missing is
"not-checkable-from-words" rather than valid.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

from . import bounds
from .decomp import decompose
from .magnus import LongitudeSystem, lcs_at_least, lcs_degree, milnor_vanish_upto
from .schreier import (
    NotInNormalClosure,
    normal_closure_lcs_at_least,
    rewrite_to_word,
)
from .words import (
    concat,
    format_word,
    generators_in,
    kill_generators,
    parse_word,
    reduce_word,
)

FLAG_REGULAR_SPINE = "regular-spine"
FLAG_UNRELATED = "geometrically-unrelated"
FLAG_ADMISSIBLE = "admissible-spine"
_SIMPLICITY_RE = re.compile(r"^simplicity=(\d+)$")

KINDS = ("hyperbolic", "elliptic", "parabolic", "unknotted")


class CertificateError(ValueError):
    """Structurally malformed certificate (CLI exit code 2)."""


class TranslationError(ValueError):
    """A certificate translation could not be carried out."""


class GuardViolation(TranslationError):
    """An index-shift hypothesis (such as n > s+1) fails."""


# ---------------------------------------------------------------------------
# Certificate data model


@dataclass(frozen=True)
class UnknottedFactors:
    """Per-pair witness factorization for the mixed-type definition."""

    x_exponent: int = 0
    chi: tuple[int, ...] = ()
    mu: tuple[int, ...] = ()
    zeta: tuple[int, ...] = ()
    m_mu: int | None = None
    m_chi: int | None = None
    m_zeta: int | None = None


@dataclass(frozen=True)
class Curve:
    name: str
    role: str
    index: int
    pushoff_plus: tuple[int, ...] | None = None
    pushoff_minus: tuple[int, ...] | None = None
    m: int | None = None
    pair: str | None = None
    factors: UnknottedFactors | None = None

    def pushoff(self, sign: str) -> tuple[int, ...] | None:
        return self.pushoff_plus if sign == "+" else self.pushoff_minus


@dataclass(frozen=True)
class SurfaceCertificate:
    kind: str
    genus: int
    n: int
    curves: tuple[Curve, ...]
    asserted_flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CertificateError(f"unknown certificate kind {self.kind!r}")
        if self.genus < 0:
            raise CertificateError("genus must be >= 0")
        if self.n < 0:
            raise CertificateError("n must be >= 0")
        names = [c.name for c in self.curves]
        if len(set(names)) != len(names):
            raise CertificateError("curve names must be distinct")
        for curve in self.curves:
            if curve.role not in ("A", "B"):
                raise CertificateError(f"curve {curve.name}: role must be A or B")
            if not 1 <= curve.index <= self.genus:
                raise CertificateError(
                    f"curve {curve.name}: index {curve.index} out of range 1..{self.genus}"
                )
            for word in self._curve_words(curve):
                for letter in word:
                    if abs(letter) > 2 * self.genus:
                        raise CertificateError(
                            f"curve {curve.name}: generator {abs(letter)} exceeds 2g = {2 * self.genus}"
                        )
        for role in ("A", "B"):
            indices = sorted(c.index for c in self.curves if c.role == role)
            if indices != sorted(set(indices)):
                raise CertificateError(f"duplicate {role}-curve indices")

    @staticmethod
    def _curve_words(curve: Curve) -> list[tuple[int, ...]]:
        words = [w for w in (curve.pushoff_plus, curve.pushoff_minus) if w is not None]
        if curve.factors is not None:
            words.extend([curve.factors.chi, curve.factors.mu, curve.factors.zeta])
        return words

    def curves_of_role(self, role: str) -> list[Curve]:
        return sorted((c for c in self.curves if c.role == role), key=lambda c: c.index)

    def curve_named(self, name: str) -> Curve:
        for c in self.curves:
            if c.name == name:
                return c
        raise CertificateError(f"no curve named {name!r}")

    def has_flag(self, flag: str) -> bool:
        return flag in self.asserted_flags

    def simplicity(self) -> int | None:
        for flag in self.asserted_flags:
            match = _SIMPLICITY_RE.match(flag)
            if match:
                return int(match.group(1))
        return None


def x_generator(index: int) -> int:
    return 2 * index - 1


def y_generator(index: int) -> int:
    return 2 * index


def prefix_kill_set(index: int) -> frozenset[int]:
    """Duals of the first index-1 handle pairs: {x_1, y_1, ..., x_{i-1}, y_{i-1}}."""
    return frozenset(range(1, 2 * (index - 1) + 1))


def a_dual_set(genus: int) -> frozenset[int]:
    return frozenset(2 * i - 1 for i in range(1, genus + 1))


def b_dual_set(genus: int) -> frozenset[int]:
    return frozenset(2 * i for i in range(1, genus + 1))


# ---------------------------------------------------------------------------
# JSON (de)serialization


def _word_or_none(value) -> tuple[int, ...] | None:
    if value is None:
        return None
    if not isinstance(value, str):
        raise CertificateError("pushoff words must be strings or null")
    return parse_word(value)


def certificate_from_dict(data: dict) -> SurfaceCertificate:
    try:
        kind = data["kind"]
        genus = int(data["genus"])
        n = int(data["n"])
        raw_curves = data["curves"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"bad certificate document: {exc}") from exc
    curves = []
    for raw in raw_curves:
        try:
            factors = None
            if raw.get("factors") is not None:
                f = raw["factors"]
                factors = UnknottedFactors(
                    x_exponent=int(f.get("x_exponent", 0)),
                    chi=parse_word(f.get("chi", "") or ""),
                    mu=parse_word(f.get("mu", "") or ""),
                    zeta=parse_word(f.get("zeta", "") or ""),
                    m_mu=None if f.get("m_mu") is None else int(f["m_mu"]),
                    m_chi=None if f.get("m_chi") is None else int(f["m_chi"]),
                    m_zeta=None if f.get("m_zeta") is None else int(f["m_zeta"]),
                )
            curves.append(
                Curve(
                    name=str(raw["name"]),
                    role=str(raw["role"]),
                    index=int(raw["index"]),
                    pushoff_plus=_word_or_none(raw.get("pushoff_plus")),
                    pushoff_minus=_word_or_none(raw.get("pushoff_minus")),
                    m=None if raw.get("m") is None else int(raw["m"]),
                    pair=raw.get("pair"),
                    factors=factors,
                )
            )
        except KeyError as exc:
            raise CertificateError(f"curve entry missing field {exc}") from exc
        except (AttributeError, TypeError, ValueError) as exc:
            raise CertificateError(f"bad curve entry: {exc}") from exc
    flags = tuple(data.get("asserted_flags", ()))
    return SurfaceCertificate(kind=kind, genus=genus, n=n, curves=tuple(curves), asserted_flags=flags)


def certificate_to_dict(cert: SurfaceCertificate) -> dict:
    def word_field(w):
        return None if w is None else format_word(w)

    curves = []
    for c in cert.curves:
        entry: dict = {
            "name": c.name,
            "role": c.role,
            "index": c.index,
            "pushoff_plus": word_field(c.pushoff_plus),
            "pushoff_minus": word_field(c.pushoff_minus),
        }
        if c.m is not None:
            entry["m"] = c.m
        if c.pair is not None:
            entry["pair"] = c.pair
        if c.factors is not None:
            f = c.factors
            entry["factors"] = {
                "x_exponent": f.x_exponent,
                "chi": format_word(f.chi),
                "mu": format_word(f.mu),
                "zeta": format_word(f.zeta),
                "m_mu": f.m_mu,
                "m_chi": f.m_chi,
                "m_zeta": f.m_zeta,
            }
        curves.append(entry)
    return {
        "schema": 1,
        "kind": cert.kind,
        "genus": cert.genus,
        "n": cert.n,
        "asserted_flags": list(cert.asserted_flags),
        "curves": curves,
    }


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class ConditionResult:
    name: str
    status: str  # pass | fail | error | vacuous | asserted
    curve: str | None = None
    detail: str = ""


@dataclass(frozen=True)
class CertificateReport:
    kind: str
    n: int
    verdict: str
    conditions: tuple[ConditionResult, ...]
    quantities: dict
    missing_flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "verdict": self.verdict,
            "conditions": [
                {
                    "name": c.name,
                    "curve": c.curve,
                    "status": c.status,
                    "detail": c.detail,
                }
                for c in self.conditions
            ],
            "quantities": self.quantities,
            "missing_flags": list(self.missing_flags),
        }


class _ReportBuilder:
    def __init__(self, kind: str, n: int):
        self.kind = kind
        self.n = n
        self.conditions: list[ConditionResult] = []
        self.quantities: dict = {}
        self.missing: list[str] = []

    def add(self, name: str, status: str, curve: str | None = None, detail: str = "") -> None:
        self.conditions.append(ConditionResult(name, status, curve, detail))

    def require_flags(self, cert: SurfaceCertificate, flags: Sequence[str]) -> None:
        for flag in flags:
            if cert.has_flag(flag):
                self.add(f"asserted:{flag}", "asserted")
            else:
                self.missing.append(flag)

    def finish(self) -> CertificateReport:
        failed = any(c.status in ("fail", "error") for c in self.conditions)
        if failed:
            verdict = "invalid"
        elif self.missing:
            verdict = "not-checkable-from-words"
        else:
            verdict = "valid"
        return CertificateReport(
            kind=self.kind,
            n=self.n,
            verdict=verdict,
            conditions=tuple(self.conditions),
            quantities=self.quantities,
            missing_flags=tuple(self.missing),
        )


# ---------------------------------------------------------------------------
# q-values from decompositions


@dataclass(frozen=True)
class QInfo:
    k: int
    q: int
    factor_count: int


def q_of_word(word: Sequence[int], m: int, exclude: frozenset[int] = frozenset()) -> QInfo:
    """q-value of a word lying in F^(m+1), from its factor partition.

    The word is decomposed into weight-(m+1) commutators plus a deeper
    residual; the factor generator sets (minus ``exclude``, the dual of
    the curve's own band) are partitioned into components and the
    minimal block generator count k feeds the two-branch bound at depth
    m.  A trivial word imposes no constraint and gets the k-free branch
    value q(m+1).
    """
    word = reduce_word(word)
    if not word or m < 1:
        # trivial word, or depth 0 where membership in F^(1) says nothing:
        # no factorization constrains the curve
        return QInfo(0, bounds.q(m + 1), 0)
    comb = decompose(word, m, m + 1)
    gensets = [
        frozenset(entries) - exclude for entries, _ in comb.factors
    ]
    if comb.residual:
        gensets.append(generators_in(comb.residual) - exclude)
    gensets = [s for s in gensets if s]
    _, k = bounds.partition_k(gensets)
    q = bounds.q_param(m, k) if k >= 1 else bounds.q(m + 1)
    return QInfo(k, q, len(comb.factors))


def q_of_closure_word(word: Sequence[int], subset: frozenset[int], m: int) -> QInfo:
    """q-value computed inside the Schreier alphabet of a normal closure."""
    return q_of_word(rewrite_to_word(word, subset), m)


# ---------------------------------------------------------------------------
# n-hyperbolic


def certify_hyperbolic(cert: SurfaceCertificate, n: int | None = None) -> CertificateReport:
    """Check the staged quotient memberships of an ordered gamma half basis.

    Stage i kills the duals of the first i-1 handle pairs and requires
    the image of one of the two pushoffs of gamma_i to lie in the
    (n+1)-st lower central term.  On success the factor partitions give
    k_i, the q-values, and the triviality bound l(n, S) = min q_i - 1.
    """
    n = cert.n if n is None else n
    rb = _ReportBuilder("hyperbolic", n)
    rb.require_flags(cert, [FLAG_REGULAR_SPINE])
    a_curves = cert.curves_of_role("A")
    if [c.index for c in a_curves] != list(range(1, cert.genus + 1)):
        raise CertificateError("hyperbolic certificate needs A-curves indexed 1..g")
    q_values = []
    per_curve = {}
    for curve in a_curves:
        kill = prefix_kill_set(curve.index)
        outcome = _staged_membership(curve, kill, n, rb)
        if outcome is None:
            continue
        sign, killed = outcome
        info = q_of_word(killed, n, exclude=frozenset({x_generator(curve.index)}))
        q_values.append(info.q)
        per_curve[curve.name] = {
            "sign": sign,
            "k": info.k,
            "q": info.q,
            "factors": info.factor_count,
        }
    rb.quantities["per_curve"] = per_curve
    if q_values:
        l_value = bounds.l_n_S(q_values)
        rb.quantities["l_n_S"] = l_value
        rb.quantities["conclusion"] = (
            f"boundary knot is at least {l_value}-trivial; Vassiliev invariants "
            f"of orders <= {l_value} vanish"
        )
    else:
        rb.quantities["l_n_S"] = None
        rb.quantities["conclusion"] = "genus 0: boundary is the trivial knot"
    return rb.finish()


def _staged_membership(
    curve: Curve, kill: frozenset[int], n: int, rb: _ReportBuilder
) -> tuple[str, tuple[int, ...]] | None:
    """Try both pushoffs of a curve for the killed-image membership."""
    candidates = [(s, curve.pushoff(s)) for s in ("+", "-") if curve.pushoff(s) is not None]
    if not candidates:
        raise CertificateError(f"curve {curve.name} has no pushoff word")
    failures = []
    for sign, word in candidates:
        killed = kill_generators(word, kill)
        if lcs_at_least(killed, n + 1):
            rb.add(
                "quotient-membership",
                "pass",
                curve.name,
                f"pushoff {sign}: image in F^({n + 1}) after killing {sorted(kill)}",
            )
            return sign, killed
        failures.append((sign, lcs_degree(killed, n)))
    detail = "; ".join(f"pushoff {s}: lcs degree {d}" for s, d in failures)
    rb.add("quotient-membership", "fail", curve.name, detail + f" < {n + 1}")
    return None


# ---------------------------------------------------------------------------
# n-elliptic


def _paired_curves(cert: SurfaceCertificate) -> list[tuple[Curve, Curve]]:
    b_by_name = {c.name: c for c in cert.curves_of_role("B")}
    b_by_index = {c.index: c for c in cert.curves_of_role("B")}
    pairs = []
    used = set()
    for a in cert.curves_of_role("A"):
        if a.pair is not None:
            b = b_by_name.get(a.pair)
            if b is None:
                raise CertificateError(f"curve {a.name}: no B-curve named {a.pair!r}")
        else:
            b = b_by_index.get(a.index)
            if b is None:
                raise CertificateError(f"curve {a.name}: no dual B-curve with index {a.index}")
        if b.name in used:
            raise CertificateError(f"B-curve {b.name} paired twice")
        used.add(b.name)
        pairs.append((a, b))
    return pairs


def _closure_membership(
    word: tuple[int, ...], subset: frozenset[int], depth: int
) -> tuple[bool, str]:
    try:
        ok = normal_closure_lcs_at_least(word, subset, depth + 1)
    except NotInNormalClosure as exc:
        return False, f"not in normal closure: {exc}"
    if ok:
        return True, f"lies in G^({depth + 1})"
    return False, f"closure lcs degree below {depth + 1}"


def certify_elliptic(cert: SurfaceCertificate, n: int | None = None) -> CertificateReport:
    """Check paired normal-closure memberships and the q-sum for each pair.

    For each dual pair (A, B) one orientation epsilon must put the
    A-pushoff in the (m_A+1)-st lower central term of the closure of
    the A-duals and the opposite pushoff of B in the (m_B+1)-st term of
    the closure of the B-duals, with q_A + q_B = n + 1 computed from
    the Schreier-alphabet decompositions at depths m_A and m_B.
    """
    n = cert.n if n is None else n
    if n <= 1:
        raise CertificateError("elliptic certificates need n > 1")
    rb = _ReportBuilder("elliptic", n)
    rb.require_flags(cert, [FLAG_REGULAR_SPINE, FLAG_UNRELATED])
    s_a = a_dual_set(cert.genus)
    s_b = b_dual_set(cert.genus)
    per_pair = {}
    for a, b in _paired_curves(cert):
        if a.m is None or b.m is None:
            raise CertificateError(f"pair ({a.name}, {b.name}): membership depths m required")
        chosen = None
        attempts = []
        for eps in ("+", "-"):
            wa = a.pushoff(eps)
            wb = b.pushoff("-" if eps == "+" else "+")
            if wa is None or wb is None:
                continue
            ok_a, detail_a = _closure_membership(wa, s_a, a.m)
            ok_b, detail_b = _closure_membership(wb, s_b, b.m)
            attempts.append((eps, ok_a, detail_a, ok_b, detail_b, wa, wb))
            if ok_a and ok_b:
                chosen = attempts[-1]
                break
        if not attempts:
            raise CertificateError(f"pair ({a.name}, {b.name}): no orientation has both pushoffs")
        if chosen is None:
            eps, ok_a, detail_a, ok_b, detail_b, _, _ = attempts[0]
            rb.add("closure-membership", "pass" if ok_a else "fail", a.name, detail_a)
            rb.add("closure-membership", "pass" if ok_b else "fail", b.name, detail_b)
            continue
        eps, _, detail_a, _, detail_b, wa, wb = chosen
        rb.add("closure-membership", "pass", a.name, f"epsilon {eps}: {detail_a}")
        rb.add("closure-membership", "pass", b.name, f"epsilon -{eps}: {detail_b}")
        qa = q_of_closure_word(wa, s_a, a.m)
        qb = q_of_closure_word(wb, s_b, b.m)
        per_pair[a.name] = {
            "epsilon": eps,
            "m_A": a.m,
            "m_B": b.m,
            "q_A": qa.q,
            "q_B": qb.q,
            "k_A": qa.k,
            "k_B": qb.k,
        }
        if qa.q + qb.q == n + 1:
            rb.add("q-sum", "pass", a.name, f"{qa.q} + {qb.q} = {n + 1}")
        else:
            rb.add("q-sum", "fail", a.name, f"{qa.q} + {qb.q} != {n + 1}")
    rb.quantities["per_pair"] = per_pair
    return rb.finish()


# ---------------------------------------------------------------------------
# n-parabolic


def certify_parabolic(
    cert: SurfaceCertificate, n: int | None = None, s: int | None = None
) -> CertificateReport:
    """Check the B-side closure memberships guarded by the simplicity s.

    With n <= s the definition imposes no word conditions and the
    certificate is vacuously acceptable; with n > s every B-pushoff must
    lie in the (m+1)-st term of the B-closure with q + s = n + 1.
    """
    n = cert.n if n is None else n
    if n <= 1:
        raise CertificateError("parabolic certificates need n > 1")
    if s is None:
        s = cert.simplicity()
    rb = _ReportBuilder("parabolic", n)
    rb.require_flags(cert, [FLAG_REGULAR_SPINE, FLAG_UNRELATED])
    if s is None:
        rb.missing.append("simplicity=<s>")
        rb.quantities["simplicity"] = None
        return rb.finish()
    if s < 1:
        raise CertificateError("simplicity must be >= 1")
    rb.quantities["simplicity"] = s
    if n <= s:
        rb.add("b-closure-conditions", "vacuous", None, f"n = {n} <= s = {s}")
        return rb.finish()
    s_b = b_dual_set(cert.genus)
    per_curve = {}
    for curve in cert.curves_of_role("B"):
        if curve.m is None:
            raise CertificateError(f"curve {curve.name}: membership depth m required")
        chosen = None
        attempts = []
        for eps in ("+", "-"):
            w = curve.pushoff(eps)
            if w is None:
                continue
            ok, detail = _closure_membership(w, s_b, curve.m)
            attempts.append((eps, ok, detail, w))
            if ok:
                chosen = attempts[-1]
                break
        if not attempts:
            raise CertificateError(f"curve {curve.name} has no pushoff word")
        if chosen is None:
            eps, ok, detail, _ = attempts[0]
            rb.add("closure-membership", "fail", curve.name, detail)
            continue
        eps, _, detail, w = chosen
        rb.add("closure-membership", "pass", curve.name, f"epsilon {eps}: {detail}")
        info = q_of_closure_word(w, s_b, curve.m)
        per_curve[curve.name] = {"epsilon": eps, "m": curve.m, "q": info.q, "k": info.k}
        if info.q + s == n + 1:
            rb.add("q-plus-s", "pass", curve.name, f"{info.q} + {s} = {n + 1}")
        else:
            rb.add("q-plus-s", "fail", curve.name, f"{info.q} + {s} != {n + 1}")
    rb.quantities["per_curve"] = per_curve
    return rb.finish()


# ---------------------------------------------------------------------------
# n-unknotted


def _x_power_word(index: int, exponent: int) -> tuple[int, ...]:
    gen = x_generator(index)
    letter = gen if exponent >= 0 else -gen
    return (letter,) * abs(exponent)


def certify_unknotted(cert: SurfaceCertificate, n: int | None = None) -> CertificateReport:
    """Check the witness factorizations of the mixed-type definition.

    Per pair: the supplied factors must multiply to the pushoffs; mu
    must survive the staged quotient at depth m_mu with q_mu = n+1; a
    chi-pair must sit in the two closures with q-sum n+1; zeta must sit
    in the B-closure with q + s = n+1; and the triviality pattern among
    the factors must match the definition's exclusions.  Equations are
    checked exactly as written even where the triviality bounds
    elsewhere use q-1; the report notes that tension.
    """
    n = cert.n if n is None else n
    if n <= 1:
        raise CertificateError("unknotted certificates need n > 1")
    rb = _ReportBuilder("unknotted", n)
    rb.require_flags(cert, [FLAG_REGULAR_SPINE])
    s = cert.simplicity()
    rb.quantities["simplicity"] = s
    rb.quantities["note"] = (
        "q-equations checked as written; the triviality bound downstream uses q-1"
    )
    s_a = a_dual_set(cert.genus)
    s_b = b_dual_set(cert.genus)
    per_pair = {}
    for a, b in _paired_curves(cert):
        fa = a.factors or UnknottedFactors()
        fb = b.factors or UnknottedFactors()
        x_word = _x_power_word(a.index, fa.x_exponent)
        product_a = concat(x_word, fa.chi, fa.mu)
        product_b = concat(fb.zeta, fb.chi)
        eps = None
        for candidate in ("+", "-"):
            wa = a.pushoff(candidate)
            wb = b.pushoff("-" if candidate == "+" else "+")
            if wa is None or wb is None:
                continue
            if product_a == reduce_word(wa) and product_b == reduce_word(wb):
                eps = candidate
                break
        if eps is None:
            rb.add(
                "factorization-product",
                "error",
                a.name,
                "supplied factors do not multiply to the pushoff words",
            )
            continue
        rb.add("factorization-product", "pass", a.name, f"epsilon {eps}")
        pair_data: dict = {"epsilon": eps}

        # (a) staged quotient membership of mu with q_mu = n+1
        if fa.mu:
            if fa.m_mu is None:
                raise CertificateError(f"curve {a.name}: m_mu required for nontrivial mu")
            killed = kill_generators(fa.mu, prefix_kill_set(a.index))
            if lcs_at_least(killed, fa.m_mu + 1):
                rb.add("mu-membership", "pass", a.name, f"in F^({fa.m_mu + 1}) after quotient")
                info = q_of_word(killed, fa.m_mu, exclude=frozenset({x_generator(a.index)}))
                pair_data["q_mu"] = info.q
                if info.q == n + 1:
                    rb.add("mu-q-equation", "pass", a.name, f"q_mu = {n + 1}")
                else:
                    rb.add("mu-q-equation", "fail", a.name, f"q_mu = {info.q} != {n + 1}")
            else:
                rb.add("mu-membership", "fail", a.name, f"not in F^({fa.m_mu + 1})")
        else:
            rb.add("mu-membership", "vacuous", a.name, "mu = 1")

        # (b) chi-pair closure memberships with q-sum n+1
        if fa.chi or fb.chi:
            if not (fa.chi and fb.chi):
                rb.add("chi-pairing", "fail", a.name, "exactly one of chi_A, chi_B is trivial")
            else:
                if fa.m_chi is None or fb.m_chi is None:
                    raise CertificateError(
                        f"pair ({a.name}, {b.name}): m_chi required for nontrivial chi"
                    )
                ok_a, detail_a = _closure_membership(fa.chi, s_a, fa.m_chi)
                ok_b, detail_b = _closure_membership(fb.chi, s_b, fb.m_chi)
                rb.add("chi-membership", "pass" if ok_a else "fail", a.name, detail_a)
                rb.add("chi-membership", "pass" if ok_b else "fail", b.name, detail_b)
                if ok_a and ok_b:
                    qa = q_of_closure_word(fa.chi, s_a, fa.m_chi)
                    qb = q_of_closure_word(fb.chi, s_b, fb.m_chi)
                    pair_data["q_chi_A"] = qa.q
                    pair_data["q_chi_B"] = qb.q
                    if qa.q + qb.q == n + 1:
                        rb.add("chi-q-sum", "pass", a.name, f"{qa.q} + {qb.q} = {n + 1}")
                    else:
                        rb.add("chi-q-sum", "fail", a.name, f"{qa.q} + {qb.q} != {n + 1}")
        else:
            rb.add("chi-membership", "vacuous", a.name, "chi_A = chi_B = 1")

        # (c) exclusion pattern
        chi_both = bool(fa.chi) and bool(fb.chi)
        chi_none = not fa.chi and not fb.chi
        zeta_trivial = not fb.zeta
        x_trivial = fa.x_exponent == 0
        mu_trivial = not fa.mu
        pattern_ok = chi_none or (
            chi_both and ((zeta_trivial and x_trivial) or (not x_trivial and not zeta_trivial))
        )
        iff_ok = chi_both == (zeta_trivial and mu_trivial and x_trivial)
        if pattern_ok and iff_ok:
            rb.add("exclusion-pattern", "pass", a.name)
        else:
            rb.add(
                "exclusion-pattern",
                "fail",
                a.name,
                f"chi_both={chi_both} zeta=1:{zeta_trivial} mu=1:{mu_trivial} x^l=1:{x_trivial}",
            )

        # (d) zeta closure membership with q + s = n+1
        if fb.zeta:
            if fb.m_zeta is None:
                raise CertificateError(f"curve {b.name}: m_zeta required for nontrivial zeta")
            ok, detail = _closure_membership(fb.zeta, s_b, fb.m_zeta)
            rb.add("zeta-membership", "pass" if ok else "fail", b.name, detail)
            if ok:
                if s is None:
                    rb.missing.append("simplicity=<s>")
                else:
                    info = q_of_closure_word(fb.zeta, s_b, fb.m_zeta)
                    pair_data["q_zeta"] = info.q
                    if info.q + s == n + 1:
                        rb.add("zeta-q-equation", "pass", b.name, f"{info.q} + {s} = {n + 1}")
                    else:
                        rb.add("zeta-q-equation", "fail", b.name, f"{info.q} + {s} != {n + 1}")
        else:
            rb.add("zeta-membership", "vacuous", b.name, "zeta = 1")
        per_pair[a.name] = pair_data
    rb.quantities["per_pair"] = per_pair
    return rb.finish()


# ---------------------------------------------------------------------------
# Certificate translations (index shifts)


CERTIFIERS: dict[str, Callable[..., CertificateReport]] = {
    "hyperbolic": certify_hyperbolic,
    "elliptic": certify_elliptic,
    "parabolic": certify_parabolic,
    "unknotted": certify_unknotted,
}


@dataclass(frozen=True)
class TranslationResult:
    certificate: SurfaceCertificate
    report: CertificateReport
    source_report: CertificateReport


def _swap_pairs_in_word(word: tuple[int, ...], swapped: set[int]) -> tuple[int, ...]:
    """Exchange x_i <-> y_i for every pair index in ``swapped``."""
    out = []
    for letter in word:
        gen = abs(letter)
        pair = (gen + 1) // 2
        if pair in swapped:
            gen = gen + 1 if gen % 2 == 1 else gen - 1
        out.append(gen if letter > 0 else -gen)
    return tuple(out)


def _relabel_curve(curve: Curve, role: str, swapped: set[int]) -> Curve:
    def w(word):
        return None if word is None else _swap_pairs_in_word(word, swapped)

    return Curve(
        name=curve.name,
        role=role,
        index=curve.index,
        pushoff_plus=w(curve.pushoff_plus),
        pushoff_minus=w(curve.pushoff_minus),
        m=curve.m,
        pair=None,
        factors=None,
    )


def _verify_source(cert: SurfaceCertificate, kind: str) -> CertificateReport:
    if cert.kind != kind:
        raise TranslationError(f"certificate kind {cert.kind!r} does not match {kind!r}")
    report = CERTIFIERS[kind](cert)
    if report.verdict != "valid":
        raise TranslationError(f"source certificate is {report.verdict}")
    return report


def translate_certificate(cert: SurfaceCertificate, kind: str, n: int) -> TranslationResult:
    """Apply the certificate index shifts and re-verify the result.

    hyperbolic: identity.  elliptic at level 2n: the member of each
    dual pair with q >= n+1 becomes a gamma-curve of an n-hyperbolic
    certificate (relabeling duals where the B-curve is chosen).
    parabolic at level n with simplicity s and n > s+1: the B-half
    basis becomes an (n-s-1)-hyperbolic certificate.  unknotted at
    level 2n with 2n > s+1: the words survive at level 2n-s-1 with the
    membership depths re-solved so the q-equations hold there.
    """
    if kind not in KINDS:
        raise TranslationError(f"unknown source kind {kind!r}")
    if kind == "hyperbolic":
        if cert.n != n:
            raise TranslationError(f"certificate level {cert.n} != n = {n}")
        source_report = _verify_source(cert, kind)
        return TranslationResult(cert, CERTIFIERS[kind](cert), source_report)

    if kind == "elliptic":
        if cert.n != 2 * n:
            raise TranslationError(f"elliptic source must have level 2n = {2 * n}, got {cert.n}")
        source_report = _verify_source(cert, kind)
        per_pair = source_report.quantities["per_pair"]
        swapped: set[int] = set()
        chosen: list[Curve] = []
        others: list[Curve] = []
        for a, b in _paired_curves(cert):
            data = per_pair[a.name]
            if data["q_A"] >= n + 1:
                chosen.append(a)
                others.append(b)
            elif data["q_B"] >= n + 1:
                swapped.add(a.index)
                chosen.append(b)
                others.append(a)
            else:
                raise TranslationError(
                    f"pair ({a.name}, {b.name}): no member has q >= {n + 1}"
                )
        curves = tuple(
            [_relabel_curve(c, "A", swapped) for c in chosen]
            + [_relabel_curve(c, "B", swapped) for c in others]
        )
        target = SurfaceCertificate(
            kind="hyperbolic",
            genus=cert.genus,
            n=n,
            curves=curves,
            asserted_flags=cert.asserted_flags,
        )
        return TranslationResult(target, certify_hyperbolic(target), source_report)

    if kind == "parabolic":
        if cert.n != n:
            raise TranslationError(f"certificate level {cert.n} != n = {n}")
        s = cert.simplicity()
        if s is None:
            raise TranslationError("parabolic source lacks a simplicity assertion")
        if not n > s + 1:
            raise GuardViolation(f"need n > s+1, got n = {n}, s = {s}")
        source_report = _verify_source(cert, kind)
        swapped = set(range(1, cert.genus + 1))
        curves = tuple(
            [_relabel_curve(c, "A", swapped) for c in cert.curves_of_role("B")]
            + [_relabel_curve(c, "B", swapped) for c in cert.curves_of_role("A")]
        )
        target = SurfaceCertificate(
            kind="hyperbolic",
            genus=cert.genus,
            n=n - s - 1,
            curves=curves,
            asserted_flags=cert.asserted_flags,
        )
        return TranslationResult(target, certify_hyperbolic(target), source_report)

    # unknotted
    if cert.n != 2 * n:
        raise TranslationError(f"unknotted source must have level 2n = {2 * n}, got {cert.n}")
    s = cert.simplicity()
    if s is None:
        raise TranslationError("unknotted source lacks a simplicity assertion")
    if not 2 * n > s + 1:
        raise GuardViolation(f"need 2n > s+1, got 2n = {2 * n}, s = {s}")
    source_report = _verify_source(cert, "unknotted")
    target_n = 2 * n - s - 1
    s_a = a_dual_set(cert.genus)
    s_b = b_dual_set(cert.genus)
    curves = []
    for a, b in _paired_curves(cert):
        fa = a.factors or UnknottedFactors()
        fb = b.factors or UnknottedFactors()
        new_fa = UnknottedFactors(
            x_exponent=fa.x_exponent,
            chi=fa.chi,
            mu=fa.mu,
            zeta=(),
            m_mu=_resolve_depth(fa.mu, fa.m_mu, target_n + 1,
                                lambda m: q_of_word(
                                    kill_generators(fa.mu, prefix_kill_set(a.index)), m,
                                    exclude=frozenset({x_generator(a.index)})).q),
            m_chi=_resolve_depth(fa.chi, fa.m_chi, None,
                                 lambda m: q_of_closure_word(fa.chi, s_a, m).q),
            m_zeta=None,
        )
        chi_target = None
        if fa.chi and fb.chi:
            qa = q_of_closure_word(fa.chi, s_a, new_fa.m_chi)
            chi_target = target_n + 1 - qa.q
        new_fb = UnknottedFactors(
            x_exponent=0,
            chi=fb.chi,
            mu=(),
            zeta=fb.zeta,
            m_chi=_resolve_depth(fb.chi, fb.m_chi, chi_target,
                                 lambda m: q_of_closure_word(fb.chi, s_b, m).q),
            m_zeta=_resolve_depth(fb.zeta, fb.m_zeta, target_n + 1 - s,
                                  lambda m: q_of_closure_word(fb.zeta, s_b, m).q),
        )
        curves.append(Curve(a.name, "A", a.index, a.pushoff_plus, a.pushoff_minus,
                            m=a.m, pair=a.pair, factors=new_fa))
        curves.append(Curve(b.name, "B", b.index, b.pushoff_plus, b.pushoff_minus,
                            m=b.m, pair=b.pair, factors=new_fb))
    target = SurfaceCertificate(
        kind="unknotted",
        genus=cert.genus,
        n=target_n,
        curves=tuple(curves),
        asserted_flags=cert.asserted_flags,
    )
    return TranslationResult(target, certify_unknotted(target), source_report)


def _resolve_depth(
    word: tuple[int, ...],
    m_source: int | None,
    q_target: int | None,
    q_at: Callable[[int], int],
) -> int | None:
    """Largest depth m <= m_source whose q-value hits ``q_target``.

    Deeper membership implies shallower membership, so lowering m keeps
    the membership valid while re-aiming the q-equation.  Trivial words
    need no depth; ``q_target`` None keeps the source depth when the
    first branch (m_chi of the A-side) is solved before its partner.
    """
    if not word or m_source is None:
        return m_source
    if q_target is None:
        return m_source
    for m in range(m_source, 0, -1):
        if q_at(m) == q_target:
            return m
    raise TranslationError(
        f"no membership depth <= {m_source} realizes the target q-value {q_target}"
    )


# ---------------------------------------------------------------------------
# Spine-link pipeline


@dataclass(frozen=True)
class PipelineReport:
    n: int
    verdict: str
    milnor_vanish: bool
    l_n_S: int | None
    conclusion: str
    slice_depth: int | None = None
    slice_vanish: bool | None = None
    slice_l: int | None = None
    slice_conclusion: str | None = None
    missing_flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "verdict": self.verdict,
            "milnor_vanish": self.milnor_vanish,
            "l_n_S": self.l_n_S,
            "conclusion": self.conclusion,
            "slice_depth": self.slice_depth,
            "slice_vanish": self.slice_vanish,
            "slice_l": self.slice_l,
            "slice_conclusion": self.slice_conclusion,
            "missing_flags": list(self.missing_flags),
        }


def _spine_l_value(cert: SurfaceCertificate, signs: Sequence[str], depth: int) -> int | None:
    """l(depth, S) from the A-curves at the chosen signs."""
    q_values = []
    for a in cert.curves_of_role("A"):
        sign = signs[2 * (a.index - 1)]
        word = a.pushoff(sign)
        killed = kill_generators(word, prefix_kill_set(a.index))
        info = q_of_word(killed, depth, exclude=frozenset({x_generator(a.index)}))
        q_values.append(info.q)
    return bounds.l_n_S(q_values) if q_values else None


def spine_link_pipeline(
    cert: SurfaceCertificate,
    signs: Sequence[str],
    n: int | None = None,
    slice_depth: int | None = None,
) -> PipelineReport:
    """Milnor vanishing of the 2g-component spine link, then the bound.

    The longitudes are the pushoff words of gamma_1, beta_1, ...,
    gamma_g, beta_g at the chosen signs, over the 2g dual meridians.
    Vanishing of all Milnor invariants of length <= n+1 yields the
    triviality conclusion at l(n, S); a supplied slice depth d adds the
    variant at l(2d-1, S).  Spine admissibility is an asserted flag.
    """
    n = cert.n if n is None else n
    if n < 1:
        raise CertificateError("pipeline needs n >= 1")
    signs = list(signs)
    if len(signs) != 2 * cert.genus or any(s not in "+-" for s in signs):
        raise CertificateError(f"need {2 * cert.genus} signs drawn from +/-")
    longitudes = []
    for i in range(1, cert.genus + 1):
        for role, offset in (("A", 0), ("B", 1)):
            matches = [c for c in cert.curves_of_role(role) if c.index == i]
            if not matches:
                raise CertificateError(f"missing {role}-curve with index {i}")
            word = matches[0].pushoff(signs[2 * (i - 1) + offset])
            if word is None:
                raise CertificateError(
                    f"curve {matches[0].name} lacks the pushoff at sign {signs[2 * (i - 1) + offset]}"
                )
            longitudes.append(word)
    system = LongitudeSystem(2 * cert.genus, tuple(longitudes))
    vanish = milnor_vanish_upto(system, n) if cert.genus else True
    missing = () if cert.has_flag(FLAG_ADMISSIBLE) else (FLAG_ADMISSIBLE,)

    l_value = _spine_l_value(cert, signs, n) if vanish else None
    if vanish:
        conclusion = (
            f"Milnor invariants of length <= {n + 1} vanish; Vassiliev invariants "
            f"of orders <= {l_value} vanish for the boundary knot"
        )
    else:
        conclusion = f"some Milnor invariant of length <= {n + 1} is nonzero"

    slice_vanish = slice_l = None
    slice_conclusion = None
    if slice_depth is not None:
        if slice_depth < 1:
            raise CertificateError("slice depth must be >= 1")
        bound_level = 2 * slice_depth - 1
        slice_vanish = milnor_vanish_upto(system, bound_level) if cert.genus else True
        slice_l = _spine_l_value(cert, signs, bound_level) if slice_vanish else None
        if slice_vanish:
            slice_conclusion = (
                f"{slice_depth}-slice input: Vassiliev invariants of orders <= "
                f"{slice_l} vanish"
            )
        else:
            slice_conclusion = (
                f"{slice_depth}-slice input fails: invariants of length <= "
                f"{2 * slice_depth} do not vanish"
            )

    if not vanish:
        verdict = "invalid"
    elif missing:
        verdict = "not-checkable-from-words"
    else:
        verdict = "valid"
    return PipelineReport(
        n=n,
        verdict=verdict,
        milnor_vanish=vanish,
        l_n_S=l_value,
        conclusion=conclusion,
        slice_depth=slice_depth,
        slice_vanish=slice_vanish,
        slice_l=slice_l,
        slice_conclusion=slice_conclusion,
        missing_flags=missing,
    )
