"""
comparison.py — Comparison pipelines between spectral sequences

First comparison (bifunctor F(X, X′) contravariant in X, covariant in X′):

    GSS(F(X,−), G)(X′) ──λ──▶ E_I(G J_{tF(B,A′)}) ◀──ρ── GSS(F(−,X′), G)(X)

with B a free resolution of X, A′ an injective resolution of X′, and
λ, ρ induced by the augmentations. Second comparison (F a functor, G(Y, =)
a bifunctor):

    E_I(G(B̄, FA)) ──u──▶ E_I(t₁,₂ G(B̄, J′)) ◀──v── GSS(F, G(Y,−))(X)

with B̄ a free resolution of Y and J′ the CE-resolution of FA. Both
pipelines validate their hypotheses first, then decide invertibility of
every arrow at every trusted dotted entry of a finite window.

haas_naturality checks that the first comparison is natural in X′ or in X,
transformation_naturality that it is natural along η: F → F̃, and
second_naturality that the second comparison is natural in X. Every
square of entry maps must commute as literal matrices.

Usage:
  report = ext_instance(A, trivial_module(A), trivial_module(A), degree=2)
  report.verdict
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.algebra import FdAlgebra, FdModule, restrict_along
from src.bicomplex import (
    CEResolution,
    DoubleComplex,
    DoubleComplexMap,
    TripleComplex,
    conc1_sign,
    lift_map_to_ce,
    lift_map_to_resolutions,
    planewise_homology_identity,
    t12,
    total,
    total_components,
    total_map,
)
from src.checks import CheckResult, all_passed, log_results
from src.complexes import CochainComplex, ComplexMap, homology_dims, is_quasiiso
from src.config import DEFAULT_RESOLUTION, RANDOM_SEED
from src.errors import DimensionMismatch
from src.functors import (
    BifunctorHandle,
    BifunctorTransformation,
    CoinducedAlong,
    FunctorHandle,
    HomBifunctor,
    HomFrom,
    space,
)
from src.grothendieck import (
    GSSResult,
    ProviderLike,
    abutment_index,
    as_provider,
    enforce_hypotheses,
    grothendieck_ss,
    gss_from_complex,
    gss_map,
)
from src.linalg import FpMatrix, mat_mul, rank, zeros
from src.resolutions import (
    FreeResolution,
    InjectiveResolution,
    ext_dims,
    lift_map_to_free_resolutions,
    projective_resolution,
)
from src.spectral import (
    FilteredComplex,
    FilteredMap,
    Page,
    classical_page,
    dotted_indices,
    entry_dim,
    entry_map,
    first_filtration,
    first_filtration_map,
    homology_degrees,
    proper_iso_check,
)

logger = logging.getLogger(__name__)

Waiver = Union[bool, Iterable[str]]


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class EntryRecord:
    index: str
    dims: List[int]
    arrows: List[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {"index": self.index, "dims": list(self.dims), "arrows": list(self.arrows)}


@dataclass
class ComparisonReport:
    """Per-entry dims of each spectral sequence and per-arrow verdicts."""

    name: str
    instance: Dict[str, Any]
    sides: List[str]
    arrows: List[str]
    entries: List[EntryRecord] = field(default_factory=list)
    hypotheses: List[CheckResult] = field(default_factory=list)
    checks: List[CheckResult] = field(default_factory=list)
    pages: Dict[str, Page] = field(default_factory=dict)
    trusted_degree: int = 0
    spectral: Dict[str, FilteredComplex] = field(default_factory=dict, repr=False)

    @property
    def arrows_hold(self) -> bool:
        return all(all(r.arrows) for r in self.entries)

    @property
    def verdict(self) -> bool:
        return all_passed(self.hypotheses) and all_passed(self.checks) and self.arrows_hold

    def dims_agree(self, sides: Optional[Sequence[int]] = None) -> bool:
        """Equal dims across the chosen sides (default: all) at every recorded entry."""
        picks = list(range(len(self.sides))) if sides is None else list(sides)
        return all(len({r.dims[k] for k in picks}) <= 1 for r in self.entries)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "instance": self.instance,
            "sides": list(self.sides),
            "arrows": list(self.arrows),
            "trusted_degree": self.trusted_degree,
            "verdict": self.verdict,
            "entries": [r.to_dict() for r in self.entries],
            "hypotheses": [r.to_dict() for r in self.hypotheses],
            "checks": [r.to_dict() for r in self.checks],
            "pages": {name: [[p, q, v] for (p, q), v in sorted(page.dims.items())]
                      for name, page in self.pages.items()},
        }


def window(degree: int) -> Tuple[range, range]:
    """Filtration values and shifts of the dotted entries checked up to `degree`."""
    return range(-(degree + 1), 1), range(0, degree + 1)


def _is_iso(m: FpMatrix, p: int) -> bool:
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def _trusted(xs: Sequence[FilteredComplex], e) -> bool:
    s, t = homology_degrees(e)
    return max(s, t) <= min(x.trusted_degree for x in xs)


def _records(sides: Sequence[FilteredComplex], arrows: Sequence[FilteredMap],
             degree: int) -> List[EntryRecord]:
    values, shifts = window(degree)
    out = []
    for e in dotted_indices(values, shifts):
        if not _trusted(sides, e):
            continue
        out.append(EntryRecord(str(e), [entry_dim(x, e) for x in sides],
                               [_is_iso(entry_map(f, e), f.p) for f in arrows]))
    return out


def _criterion_checks(arrows: Dict[str, FilteredMap], degree: int) -> List[CheckResult]:
    values, shifts = window(degree)
    out = []
    for name, f in arrows.items():
        rep = proper_iso_check(f, values, shifts, full=False)
        out.append(CheckResult(name="second-page-criterion", passed=rep.criterion, module="comparison",
                               details={"arrow": name}))
    return out


def _pages(sides: Dict[str, FilteredComplex], degree: int) -> Dict[str, Page]:
    return {name: classical_page(x, 2, degree, differentials=False) for name, x in sides.items()}


def _lift_through(f: ComplexMap, src: GSSResult, tgt_ce: CEResolution, tgt_gj: DoubleComplex,
                  tgt_filtered: FilteredComplex, g: FunctorHandle) -> FilteredMap:
    """CE-lift a map FA → tgt, apply G, filter."""
    ce_map = lift_map_to_ce(f, src.ce, tgt_ce)
    return first_filtration_map(g.on_double_map(ce_map, src.gj, tgt_gj), src.filtered, tgt_filtered)


# ---------------------------------------------------------------------------
# First comparison
# ---------------------------------------------------------------------------

@dataclass
class FirstComparisonChain:
    f: BifunctorHandle
    g: FunctorHandle
    x: FdModule
    x_prime: FdModule
    left: GSSResult
    right: GSSResult
    middle: DoubleComplex
    middle_total: CochainComplex
    middle_ce: CEResolution
    middle_gj: DoubleComplex
    middle_filtered: FilteredComplex
    lam: ComplexMap
    rho: ComplexMap
    lam_filtered: FilteredMap
    rho_filtered: FilteredMap
    hypotheses: List[CheckResult]

    @property
    def length(self) -> int:
        return self.left.ce.length


def middle_double_complex(f: BifunctorHandle, b: FreeResolution, a) -> DoubleComplex:
    """W^{i,j} = F(B_i, A′^j): vertical F(∂_{i+1}, A′^j), horizontal F(B_i, d′^j)."""
    n1, n2 = b.length, a.length
    terms_b = [b.term(i) for i in range(n1 + 1)]
    mods = {(i, j): f.on_objects(terms_b[i], a.terms[j]) for i in range(n1 + 1) for j in range(n2 + 1)}
    dims = [[mods[(i, j)].dim for j in range(n2 + 1)] for i in range(n1 + 1)]
    d = {(i, j): f.on_second(a.diffs[j], terms_b[i], a.terms[j], a.terms[j + 1])
         for i in range(n1 + 1) for j in range(n2)}
    dl = {(i, j): f.on_first(b.boundaries[i], terms_b[i + 1], terms_b[i], a.terms[j])
          for i in range(n1) for j in range(n2 + 1)}
    return DoubleComplex(b.module.p, dims, d, dl, mods)


def build_first_chain(f: BifunctorHandle, g: FunctorHandle, x: FdModule, x_prime: FdModule, degree: int,
                      provider: ProviderLike = None, kind: str = DEFAULT_RESOLUTION, waive: Waiver = False,
                      projective: Optional[FreeResolution] = None,
                      injective: Optional[InjectiveResolution] = None) -> FirstComparisonChain:
    """Both GSS sides, the middle object tF(B, A′) and λ, ρ; given resolutions of X and X′ are reused."""
    provider = as_provider(provider)
    p = x.p
    left = grothendieck_ss(x_prime, f.fix_first(x), g, degree, provider, kind, waive=waive,
                           resolution=injective)
    right = grothendieck_ss(x, f.fix_second(x_prime), g, degree, provider, kind, waive=waive,
                            resolution=projective)
    b, a = right.resolution, left.resolution
    length = left.ce.length
    w = middle_double_complex(f, b, a)
    tw = total(w).truncate(0, length)

    lam_comps = {}
    for j in range(length + 1):
        out = zeros(left.fa.dim(j), tw.dim(j))
        out[:, :w.dim(0, j)] = f.on_first(b.augmentation, b.term(0), x, a.terms[j])
        lam_comps[j] = out
    lam = ComplexMap(left.fa, tw, lam_comps)
    rho_comps = {}
    for i in range(length + 1):
        out = zeros(right.fa.dim(i), tw.dim(i))
        off = {(r, c): o for r, c, o in total_components(w, i)}[(i, 0)]
        block = f.on_second(a.augmentation, b.term(i), x_prime, a.terms[0])
        out[:, off:off + w.dim(i, 0)] = (conc1_sign(i) * block) % p
        rho_comps[i] = out
    rho = ComplexMap(right.fa, tw, rho_comps)

    degrees = range(0, length - 1)
    hypotheses = list(left.hypotheses) + list(right.hypotheses)
    hypotheses.append(CheckResult(name="d-left-quasiiso", passed=is_quasiiso(lam, degrees), module="comparison",
                                  description="F(X, A′) → tF(B, A′) is a quasiisomorphism"))
    hypotheses.append(CheckResult(name="d-right-quasiiso", passed=is_quasiiso(rho, degrees), module="comparison",
                                  description="F(B, X′) → tF(B, A′) is a quasiisomorphism"))
    rng = np.random.default_rng(RANDOM_SEED)
    bi = f.check_biadditivity([x], [x_prime], rng)
    hypotheses.append(CheckResult(name="biadditive", passed=all_passed(bi), module="comparison",
                                  details={"samples": len(bi)}))
    enforce_hypotheses(hypotheses, waive)

    mid_ce, mid_gj, mid_filtered = gss_from_complex(tw, g, provider, length)
    lam_f = _lift_through(lam, left, mid_ce, mid_gj, mid_filtered, g)
    rho_f = _lift_through(rho, right, mid_ce, mid_gj, mid_filtered, g)
    return FirstComparisonChain(f, g, x, x_prime, left, right, w, tw, mid_ce, mid_gj, mid_filtered,
                                lam, rho, lam_f, rho_f, hypotheses)


def first_comparison(f: BifunctorHandle, g: FunctorHandle, x: FdModule, x_prime: FdModule, degree: int,
                     provider: ProviderLike = None, kind: str = DEFAULT_RESOLUTION,
                     waive: Waiver = False) -> ComparisonReport:
    """GSS(F(X,−), G)(X′) ≅ GSS(F(−,X′), G)(X) through the middle object tF(B, A′)."""
    return first_report(build_first_chain(f, g, x, x_prime, degree, provider, kind, waive), degree, kind)


def first_report(chain: FirstComparisonChain, degree: int, kind: str = DEFAULT_RESOLUTION) -> ComparisonReport:
    f, g = chain.f, chain.g
    sides = {"F(X,-)": chain.left.filtered, "middle": chain.middle_filtered, "F(-,X')": chain.right.filtered}
    report = ComparisonReport(
        name="first-comparison",
        instance={"bifunctor": f.name, "functor": g.name, "degree": degree,
                  "provider": chain.left.provider.strategy, "resolution": kind,
                  "left": chain.left.provenance, "right": chain.right.provenance},
        sides=list(sides), arrows=["lambda", "rho"],
        hypotheses=chain.hypotheses, trusted_degree=chain.middle_filtered.trusted_degree,
        spectral=sides,
    )
    report.entries = _records(list(sides.values()), [chain.lam_filtered, chain.rho_filtered], degree)
    report.checks = _criterion_checks({"lambda": chain.lam_filtered, "rho": chain.rho_filtered}, degree)
    report.pages = _pages(sides, degree)
    logger.info(f"first comparison ({f.name}, {g.name}): {len(report.entries)} entries, verdict {report.verdict}")
    return report


# ---------------------------------------------------------------------------
# Second comparison
# ---------------------------------------------------------------------------

def _exactness_record(name: str, complexes: Dict[Tuple[int, int], CochainComplex], top: int) -> CheckResult:
    bad = [k for k, c in complexes.items() if any(homology_dims(c)[n] for n in range(0, top))]
    return CheckResult(name=name, passed=not bad, module="comparison",
                       details={"checked": len(complexes), "failing": [list(k) for k in bad[:5]]})


def _augmented(p: int, objs: List[FdModule], maps: List[FpMatrix]) -> CochainComplex:
    return CochainComplex(p, 0, [m.dim for m in objs], dict(enumerate(maps)), check=False)


@dataclass
class SecondComparisonChain:
    f: FunctorHandle
    g: BifunctorHandle
    x: FdModule
    y: FdModule
    gss: GSSResult
    bbar: FreeResolution
    dx: DoubleComplex
    d_filtered: FilteredComplex
    triple: TripleComplex
    tx: DoubleComplex
    t_filtered: FilteredComplex
    u_filtered: FilteredMap
    v_filtered: FilteredMap
    hypotheses: List[CheckResult]
    checks: List[CheckResult]

    @property
    def length(self) -> int:
        return self.gss.ce.length


def build_second_chain(f: FunctorHandle, g: BifunctorHandle, x: FdModule, y: FdModule, degree: int,
                       provider: ProviderLike = None, kind: str = DEFAULT_RESOLUTION,
                       y_kind: Optional[str] = None, waive: Waiver = False,
                       gss: Optional[GSSResult] = None,
                       projective: Optional[FreeResolution] = None) -> SecondComparisonChain:
    provider = as_provider(provider)
    p = x.p
    if gss is None:
        gss = grothendieck_ss(x, f, g.fix_first(y), degree, provider, kind, waive=waive)
    length = gss.ce.length
    trusted = gss.trusted_degree
    if projective is not None and projective.length != length:
        raise DimensionMismatch(f"resolution of Y of length {projective.length}, expected {length}")
    bbar = projective if projective is not None else projective_resolution(y, length, kind=y_kind or kind)
    bs = [bbar.term(a) for a in range(length + 1)]
    fa, j = gss.fa, gss.ce.carrier
    n = range(length + 1)

    # D^{a,c} = G(B̄_a, FA^c)
    fam = [fa.module(c) for c in n]
    dmods = {(a, c): g.on_objects(bs[a], fam[c]) for a in n for c in n}
    dd = {(a, c): g.on_second(fa.d(c), bs[a], fam[c], fam[c + 1]) for a in n for c in range(length)}
    ddl = {(a, c): g.on_first(bbar.boundaries[a], bs[a + 1], bs[a], fam[c]) for a in range(length) for c in n}
    dx = DoubleComplex(p, [[dmods[(a, c)].dim for c in n] for a in n], dd, ddl, dmods)
    d_filtered = first_filtration(dx, trusted_degree=trusted)

    # Y^{a,i,c} = G(B̄_a, J′^{i,c})
    jm = {(i, c): j.module(i, c) for i in n for c in n}
    ydims = {(a, i, c): g.on_objects(bs[a], jm[(i, c)]).dim for a in n for i in n for c in n}
    d1 = {(a, i, c): g.on_first(bbar.boundaries[a], bs[a + 1], bs[a], jm[(i, c)])
          for a in range(length) for i in n for c in n}
    d2 = {(a, i, c): g.on_second(j.dl(i, c), bs[a], jm[(i, c)], jm[(i + 1, c)])
          for a in n for i in range(length) for c in n}
    d3 = {(a, i, c): g.on_second(j.d(i, c), bs[a], jm[(i, c)], jm[(i, c + 1)])
          for a in n for i in n for c in range(length)}
    triple = TripleComplex(p, ydims, (length, length, length), d1, d2, d3)
    tx = t12(triple).truncate(length, length)
    t_filtered = first_filtration(tx, trusted_degree=trusted)

    planes = [triple.plane(c) for c in n]
    u = {}
    for a in n:
        for c in n:
            out = zeros(dx.dim(a, c), tx.dim(a, c))
            off = {(r, s): o for r, s, o in total_components(planes[c], a)}[(a, 0)]
            block = g.on_second(gss.ce.augmentation[c], bs[a], fam[c], jm[(0, c)])
            out[:, off:off + triple.dim(a, 0, c)] = (conc1_sign(a) * block) % p
            u[(a, c)] = out
    eps = {(i, c): g.on_first(bbar.augmentation, bs[0], y, jm[(i, c)]) for i in n for c in n}
    v = {}
    for i in n:
        for c in n:
            out = zeros(gss.gj.dim(i, c), tx.dim(i, c))
            out[:, :triple.dim(0, i, c)] = eps[(i, c)]
            v[(i, c)] = out
    u_f = first_filtration_map(DoubleComplexMap(dx, tx, u), d_filtered, t_filtered)
    v_f = first_filtration_map(DoubleComplexMap(gss.gj, tx, v), gss.filtered, t_filtered)

    # G(B̄_a, −) on the CE columns and G(−, J′^{i,c}) on B̄ → Y stay exact
    cols = {(a, c): _augmented(p, [dmods[(a, c)]] + [g.on_objects(bs[a], jm[(i, c)]) for i in n],
                               [g.on_second(gss.ce.augmentation[c], bs[a], fam[c], jm[(0, c)])]
                               + [d2[(a, i, c)] for i in range(length)])
            for a in n for c in n}
    rows = {(i, c): _augmented(p, [g.on_objects(y, jm[(i, c)])] + [g.on_objects(bs[a], jm[(i, c)]) for a in n],
                               [eps[(i, c)]] + [d1[(a, i, c)] for a in range(length)])
            for i in n for c in n}
    hypotheses = list(gss.hypotheses)
    hypotheses.append(_exactness_record("G(B,-)-exact", cols, length))
    hypotheses.append(_exactness_record("G(-,J)-exact", rows, length))
    enforce_hypotheses(hypotheses, waive)

    checks = [CheckResult(name="planewise-homology", passed=planewise_homology_identity(triple, ell),
                          module="comparison", details={"l": ell}) for ell in range(length)]
    checks += _criterion_checks({"u": u_f, "v": v_f}, degree)
    return SecondComparisonChain(f, g, x, y, gss, bbar, dx, d_filtered, triple, tx, t_filtered,
                                 u_f, v_f, hypotheses, checks)


def second_comparison(f: FunctorHandle, g: BifunctorHandle, x: FdModule, y: FdModule, degree: int,
                      provider: ProviderLike = None, kind: str = DEFAULT_RESOLUTION,
                      y_kind: Optional[str] = None, waive: Waiver = False,
                      gss: Optional[GSSResult] = None) -> ComparisonReport:
    """E_I(G(B̄, FA)) ≅ GSS(F, G(Y,−))(X) through the planewise total t₁,₂G(B̄, J′)."""
    chain = build_second_chain(f, g, x, y, degree, provider, kind, y_kind, waive, gss)
    return second_report(chain, degree, y_kind or kind)


def second_report(chain: SecondComparisonChain, degree: int, kind: str = DEFAULT_RESOLUTION) -> ComparisonReport:
    f, g, gss = chain.f, chain.g, chain.gss
    sides = {"G(B,FA)": chain.d_filtered, "t12": chain.t_filtered, "GSS": gss.filtered}
    report = ComparisonReport(
        name="second-comparison",
        instance={"functor": f.name, "bifunctor": g.name, "degree": degree,
                  "provider": gss.provider.strategy, "resolution": kind, "gss": gss.provenance},
        sides=list(sides), arrows=["u", "v"], hypotheses=chain.hypotheses, checks=list(chain.checks),
        trusted_degree=gss.trusted_degree, spectral=sides,
    )
    report.entries = _records(list(sides.values()), [chain.u_filtered, chain.v_filtered], degree)
    report.pages = _pages(sides, degree)
    logger.info(f"second comparison ({f.name}, {g.name}): {len(report.entries)} entries, verdict {report.verdict}")
    return report


# ---------------------------------------------------------------------------
# Naturality
# ---------------------------------------------------------------------------

# (a, b, c, d) commutes when a then b equals c then d
Square = Tuple[FilteredMap, FilteredMap, FilteredMap, FilteredMap]


def _square_entries(sides: Sequence[FilteredComplex], squares: Sequence[Square], degree: int) -> List[EntryRecord]:
    values, shifts = window(degree)
    out = []
    for e in dotted_indices(values, shifts):
        if not _trusted(sides, e):
            continue
        arrows = []
        for a, b, c, d in squares:
            p = a.p
            arrows.append(bool(np.array_equal(mat_mul(entry_map(a, e), entry_map(b, e), p),
                                              mat_mul(entry_map(c, e), entry_map(d, e), p))))
        out.append(EntryRecord(str(e), [entry_dim(s, e) for s in sides], arrows))
    return out


def _naturality_report(instance: Dict[str, Any], sides: Dict[str, FilteredComplex], arrows: List[str],
                       squares: Sequence[Square], hypotheses: List[CheckResult], degree: int) -> ComparisonReport:
    entries = _square_entries(list(sides.values()), squares, degree)
    report = ComparisonReport(
        name="naturality", instance=instance, sides=list(sides), arrows=arrows, entries=entries,
        hypotheses=hypotheses, trusted_degree=min(s.trusted_degree for s in sides.values()),
    )
    logger.info(f"naturality along {instance.get('along')}: {len(entries)} entries, verdict {report.verdict}")
    return report


def _first_sides(one: FirstComparisonChain, two: FirstComparisonChain) -> Dict[str, FilteredComplex]:
    return {"left": one.left.filtered, "left~": two.left.filtered,
            "middle": one.middle_filtered, "middle~": two.middle_filtered,
            "right": one.right.filtered, "right~": two.right.filtered}


def _middle_map(src: FirstComparisonChain, tgt: FirstComparisonChain,
                components: Dict[Tuple[int, int], FpMatrix]) -> FilteredMap:
    """A map of middle double complexes, totalled, CE-lifted, sent through G and filtered."""
    tmap = total_map(DoubleComplexMap(src.middle, tgt.middle, components))
    mid = ComplexMap(src.middle_total, tgt.middle_total, {k: tmap.component(k) for k in range(src.length + 1)})
    mid_ce = lift_map_to_ce(mid, src.middle_ce, tgt.middle_ce)
    return first_filtration_map(src.g.on_double_map(mid_ce, src.middle_gj, tgt.middle_gj),
                                src.middle_filtered, tgt.middle_filtered)


def haas_naturality(f: BifunctorHandle, g: FunctorHandle, x: FdModule, x_prime: FdModule,
                    x_tilde: FdModule, phi: FpMatrix, degree: int, provider: ProviderLike = None,
                    kind: str = DEFAULT_RESOLUTION, waive: Waiver = False, slot: str = "second") -> ComparisonReport:
    """
    Naturality of the first comparison in one slot of F.

    slot "second": φ: X′ → X̃′ and the squares λ̃∘left(φ) = mid(φ)∘λ and
    ρ̃∘right(φ) = mid(φ)∘ρ commute at every trusted dotted entry.
    slot "first": φ: X → X̃ and the induced maps run from the X̃ chain back
    to the X chain, so the squares read λ∘left(φ) = mid(φ)∘λ̃ and so on.
    """
    if slot not in ("first", "second"):
        raise ValueError(f"unknown slot {slot!r}; expected 'first' or 'second'")
    if slot == "first":
        return _naturality_in_first(f, g, x, x_prime, x_tilde, phi, degree, provider, kind, waive)
    p = x.p
    phi = np.asarray(phi, dtype=np.int64).reshape(x_prime.dim, x_tilde.dim) % p
    one = build_first_chain(f, g, x, x_prime, degree, provider, kind, waive)
    two = build_first_chain(f, g, x, x_tilde, degree, provider, kind, waive, projective=one.right.resolution)
    b = one.right.resolution
    length = one.length

    left_map = gss_map(phi, one.left, two.left)
    hs = lift_map_to_resolutions(phi, one.left.resolution, two.left.resolution)
    mid_map = _middle_map(one, two, {
        (i, j): f.on_second(hs[j], b.term(i), one.left.resolution.terms[j], two.left.resolution.terms[j])
        for i in range(length + 1) for j in range(length + 1)})
    right = ComplexMap(one.right.fa, two.right.fa,
                       {i: f.on_second(phi, b.term(i), x_prime, x_tilde) for i in range(length + 1)})
    right_map = _lift_through(right, one.right, two.right.ce, two.right.gj, two.right.filtered, g)

    squares = [(one.lam_filtered, mid_map, left_map, two.lam_filtered),
               (one.rho_filtered, mid_map, right_map, two.rho_filtered)]
    instance = {"bifunctor": f.name, "functor": g.name, "degree": degree, "along": "X'", "map_rank": rank(phi, p)}
    return _naturality_report(instance, _first_sides(one, two), ["lambda-square", "rho-square"], squares,
                              one.hypotheses + two.hypotheses, degree)


def _naturality_in_first(f: BifunctorHandle, g: FunctorHandle, x: FdModule, x_prime: FdModule,
                         x_tilde: FdModule, phi: FpMatrix, degree: int, provider: ProviderLike,
                         kind: str, waive: Waiver) -> ComparisonReport:
    p = x.p
    phi = np.asarray(phi, dtype=np.int64).reshape(x.dim, x_tilde.dim) % p
    one = build_first_chain(f, g, x, x_prime, degree, provider, kind, waive)
    two = build_first_chain(f, g, x_tilde, x_prime, degree, provider, kind, waive, injective=one.left.resolution)
    a = one.left.resolution
    b, b_tilde = one.right.resolution, two.right.resolution
    length = one.length

    right_map = gss_map(phi, one.right, two.right)
    hs = lift_map_to_free_resolutions(phi, b, b_tilde)
    mid_map = _middle_map(two, one, {
        (i, j): f.on_first(hs[i], b.term(i), b_tilde.term(i), a.terms[j])
        for i in range(length + 1) for j in range(length + 1)})
    left = ComplexMap(two.left.fa, one.left.fa,
                      {j: f.on_first(phi, x, x_tilde, a.terms[j]) for j in range(length + 1)})
    left_map = _lift_through(left, two.left, one.left.ce, one.left.gj, one.left.filtered, g)

    squares = [(left_map, one.lam_filtered, two.lam_filtered, mid_map),
               (right_map, one.rho_filtered, two.rho_filtered, mid_map)]
    instance = {"bifunctor": f.name, "functor": g.name, "degree": degree, "along": "X", "map_rank": rank(phi, p)}
    return _naturality_report(instance, _first_sides(one, two), ["lambda-square", "rho-square"], squares,
                              one.hypotheses + two.hypotheses, degree)


def transformation_naturality(eta: BifunctorTransformation, g: FunctorHandle, x: FdModule, x_prime: FdModule,
                              degree: int, provider: ProviderLike = None, kind: str = DEFAULT_RESOLUTION,
                              waive: Waiver = False) -> ComparisonReport:
    """
    Naturality of the first comparison along η: F → F̃. Both chains share
    the resolutions of X and X′; η is applied termwise on all three sides.
    """
    f, f_tilde = eta.src, eta.tgt
    one = build_first_chain(f, g, x, x_prime, degree, provider, kind, waive)
    two = build_first_chain(f_tilde, g, x, x_prime, degree, provider, kind, waive,
                            projective=one.right.resolution, injective=one.left.resolution)
    a, b = one.left.resolution, one.right.resolution
    length = one.length
    natural = eta.check_naturality([x], [x_prime], np.random.default_rng(RANDOM_SEED))
    enforce_hypotheses(natural, waive)

    left = ComplexMap(one.left.fa, two.left.fa, {j: eta.component(x, a.terms[j]) for j in range(length + 1)})
    left_map = _lift_through(left, one.left, two.left.ce, two.left.gj, two.left.filtered, g)
    right = ComplexMap(one.right.fa, two.right.fa,
                       {i: eta.component(b.term(i), x_prime) for i in range(length + 1)})
    right_map = _lift_through(right, one.right, two.right.ce, two.right.gj, two.right.filtered, g)
    mid_map = _middle_map(one, two, {(i, j): eta.component(b.term(i), a.terms[j])
                                     for i in range(length + 1) for j in range(length + 1)})

    squares = [(one.lam_filtered, mid_map, left_map, two.lam_filtered),
               (one.rho_filtered, mid_map, right_map, two.rho_filtered)]
    instance = {"bifunctor": f.name, "target": f_tilde.name, "functor": g.name, "degree": degree,
                "along": eta.name}
    return _naturality_report(instance, _first_sides(one, two), ["lambda-square", "rho-square"], squares,
                              one.hypotheses + two.hypotheses + natural, degree)


def second_naturality(f: FunctorHandle, g: BifunctorHandle, x: FdModule, x_tilde: FdModule, y: FdModule,
                      phi: FpMatrix, degree: int, provider: ProviderLike = None,
                      kind: str = DEFAULT_RESOLUTION, y_kind: Optional[str] = None,
                      waive: Waiver = False) -> ComparisonReport:
    """
    Naturality of the second comparison in X along φ: X → X̃: the squares
    ũ∘D(φ) = t(φ)∘u and ṽ∘GSS(φ) = t(φ)∘v commute at every trusted entry.
    """
    p = x.p
    phi = np.asarray(phi, dtype=np.int64).reshape(x.dim, x_tilde.dim) % p
    one = build_second_chain(f, g, x, y, degree, provider, kind, y_kind, waive)
    two = build_second_chain(f, g, x_tilde, y, degree, provider, kind, y_kind, waive, projective=one.bbar)
    s, t = one.gss, two.gss
    n = range(one.length + 1)
    bs = [one.bbar.term(a) for a in n]

    gs = lift_map_to_resolutions(phi, s.resolution, t.resolution)
    fmap = ComplexMap(s.fa, t.fa, {c: f.on_map(gs[c], s.resolution.terms[c], t.resolution.terms[c]) for c in n})
    ce_map = lift_map_to_ce(fmap, s.ce, t.ce)
    gss_side = first_filtration_map(s.g.on_double_map(ce_map, s.gj, t.gj), s.filtered, t.filtered)

    d_map = DoubleComplexMap(one.dx, two.dx, {
        (a, c): g.on_second(fmap.component(c), bs[a], s.fa.module(c), t.fa.module(c)) for a in n for c in n})
    d_side = first_filtration_map(d_map, one.d_filtered, two.d_filtered)

    t_comps = {}
    for c in n:
        plane = DoubleComplexMap(one.triple.plane(c), two.triple.plane(c), {
            (a, i): g.on_second(ce_map.component(i, c), bs[a], s.ce.carrier.module(i, c), t.ce.carrier.module(i, c))
            for a in n for i in n}, check=False)
        tm = total_map(plane)
        for k in n:
            t_comps[(k, c)] = tm.component(k)
    t_side = first_filtration_map(DoubleComplexMap(one.tx, two.tx, t_comps), one.t_filtered, two.t_filtered)

    squares = [(d_side, two.u_filtered, one.u_filtered, t_side),
               (gss_side, two.v_filtered, one.v_filtered, t_side)]
    sides = {"G(B,FA)": one.d_filtered, "G(B,FA)~": two.d_filtered, "t12": one.t_filtered,
             "t12~": two.t_filtered, "GSS": s.filtered, "GSS~": t.filtered}
    instance = {"functor": f.name, "bifunctor": g.name, "degree": degree, "along": "X", "map_rank": rank(phi, p)}
    return _naturality_report(instance, sides, ["u-square", "v-square"], squares,
                              one.hypotheses + two.hypotheses, degree)


# ---------------------------------------------------------------------------
# Instances with direct oracles
# ---------------------------------------------------------------------------

def _oracle_checks(report: ComparisonReport, side_names: Sequence[str], oracle: Sequence[int],
                   degree: int, what: str) -> List[CheckResult]:
    out = []
    for name in side_names:
        x = report.spectral[name]
        for n in range(degree + 1):
            got = entry_dim(x, abutment_index(n))
            out.append(CheckResult(name="oracle", passed=got == oracle[n], module="comparison",
                                   details={"side": name, "n": n, "entry": got, what: oracle[n]}))
    return out


def ext_instance(algebra: FdAlgebra, x: FdModule, x_prime: FdModule, degree: int,
                 m: Optional[FdModule] = None, provider: ProviderLike = None,
                 kind: str = DEFAULT_RESOLUTION, waive: Waiver = False) -> ComparisonReport:
    """First comparison for Hom_A(−, =) with G = Hom_k(M, −), against Ext_A(X, X′)."""
    g = HomFrom(m if m is not None else space(x.p, 1))
    report = first_comparison(HomBifunctor(algebra), g, x, x_prime, degree, provider, kind, waive)
    oracle = ext_dims(projective_resolution(x, degree + 2, kind=kind), x_prime)
    report.checks += _oracle_checks(report, ["F(X,-)", "F(-,X')"], oracle, degree, "ext")
    log_results(report.checks, "Ext oracle")
    return report


def change_of_rings_instance(phi: FpMatrix, source: FdAlgebra, target: FdAlgebra, x: FdModule,
                             y: FdModule, degree: int, provider: ProviderLike = None,
                             kind: str = DEFAULT_RESOLUTION, waive: Waiver = False) -> ComparisonReport:
    """
    Second comparison for F = Hom_A(B, −) along φ: A → B and G = Hom_B(−, =);
    both sides are compared with Ext_A(Y|_A, X).
    """
    f = CoinducedAlong(phi, source, target)
    report = second_comparison(f, HomBifunctor(target), x, y, degree, provider, kind, waive=waive)
    oracle = ext_dims(projective_resolution(restrict_along(y, phi, source), degree + 2, kind=kind), x)
    report.checks += _oracle_checks(report, ["G(B,FA)", "GSS"], oracle, degree, "ext")
    log_results(report.checks, "change-of-rings oracle")
    return report
