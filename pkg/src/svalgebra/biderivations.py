"""Bilinear maps on a window: the central-shift family, biderivation
checking and classification, and the slice decomposition.

A biderivation satisfies two identities on all inputs:

    (1)  f([x,y], z) = [x, f(y,z)] + [f(x,z), y]
    (2)  f(x, [y,z]) = [f(x,y), z] + [y, f(x,z)]

The classified shape is f = lam*[.,.] + central shift part, where the
shift part sends (L_m, L_n) to sum_k mu_k M_{m+n+k} and kills any argument
from the Y or M families.  The same truncation discipline as the operator
module applies: identity (1) re-brackets values against the first two
arguments, identity (2) against the last two, so those are the coordinate
anchors for row emission and defect projection.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .algebra import (
    ZERO,
    AlgebraConfig,
    Element,
    GeneratorId,
    Scalar,
    bracket,
    bracket_basis,
    gen,
)
from .linalg import (
    SparseMatrix,
    SparseVec,
    SpanBasis,
    kernel_basis,
    span_basis,
    vec_add_scaled,
)
from .operators import (
    DecompositionError,
    LinearOperator,
    _bump,
    builtin_derivation,
    decompose_derivation,
    project_columns,
)
from .windows import DefectReport, Window

Pair = Tuple[GeneratorId, GeneratorId]


@dataclass(frozen=True)
class OmegaSet:
    """Finite set of central shifts: shift k -> nonzero coefficient mu_k."""

    mu: Tuple[Tuple[int, Fraction], ...]

    def __init__(self, mu: Mapping[int, Scalar] = ()):  # type: ignore[assignment]
        entries = []
        for k, v in dict(mu).items():
            if not isinstance(k, int):
                raise ValueError(f"shift {k!r} is not an integer")
            v = Fraction(v)
            if v:
                entries.append((k, v))
        entries.sort()
        object.__setattr__(self, "mu", tuple(entries))

    @property
    def is_empty(self) -> bool:
        return not self.mu

    def items(self) -> Tuple[Tuple[int, Fraction], ...]:
        return self.mu

    def get(self, k: int) -> Fraction:
        for kk, v in self.mu:
            if kk == k:
                return v
        return Fraction(0)

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.mu)

    def __str__(self) -> str:
        if not self.mu:
            return "{}"
        return "{" + ", ".join(f"mu[{k}]={v}" for k, v in self.mu) + "}"


EMPTY_OMEGA = OmegaSet({})


@dataclass(frozen=True)
class BiderivationForm:
    """The classified pair (lam, omega): f = lam*[.,.] + shift part."""

    lam: Fraction
    omega: OmegaSet

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", Fraction(self.lam))
        if not isinstance(self.omega, OmegaSet):
            object.__setattr__(self, "omega", OmegaSet(self.omega))

    @property
    def is_trivial(self) -> bool:
        return not self.lam and self.omega.is_empty

    def __str__(self) -> str:
        return f"(lam={self.lam}, omega={self.omega})"


@dataclass
class BilinearMap:
    """Bilinear map given by its values on every ordered window pair.

    Values are full elements and may reach outside the window.
    """

    tensor: Dict[Pair, Element]
    label: str = ""

    def value(self, g1: GeneratorId, g2: GeneratorId) -> Element:
        v = self.tensor.get((g1, g2))
        if v is None:
            raise KeyError(f"bilinear map {self.label or '?'} undefined on ({g1}, {g2})")
        return v

    def apply(self, x: Element, y: Element) -> Element:
        out = ZERO
        for g1, c1 in x.terms.items():
            for g2, c2 in y.terms.items():
                out = out + self.value(g1, g2).scaled(c1 * c2)
        return out

    def is_symmetric(self) -> bool:
        return all(v == self.tensor[(b, a)] for (a, b), v in self.tensor.items())

    def is_skewsymmetric(self) -> bool:
        return all(v == -self.tensor[(b, a)] for (a, b), v in self.tensor.items())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BilinearMap) and self.tensor == other.tensor


def bilinear_map_on_window(
    mapping: Mapping[Pair, Element], w: Window, cfg: AlgebraConfig, label: str = ""
) -> BilinearMap:
    """Total window tensor from a partial one; omitted pairs are zero."""
    tensor: Dict[Pair, Element] = {}
    gens = w.generators(cfg)
    for g1 in gens:
        for g2 in gens:
            tensor[(g1, g2)] = ZERO
    for pair, v in mapping.items():
        if pair not in tensor:
            raise ValueError(f"pair ({pair[0]}, {pair[1]}) outside the window")
        tensor[pair] = v
    return BilinearMap(tensor, label)


def chi_omega(omega: OmegaSet, w: Window, cfg: AlgebraConfig) -> BilinearMap:
    """The symmetric central-shift map: (L_m, L_n) -> sum_k mu_k M_{m+n+k},
    zero whenever either argument is from the Y or M families."""
    tensor: Dict[Pair, Element] = {}
    gens = w.generators(cfg)
    for g1 in gens:
        for g2 in gens:
            if g1.family == "L" and g2.family == "L":
                s = g1.index + g2.index
                tensor[(g1, g2)] = Element(
                    {gen("M", s + k): v for k, v in omega.items()}
                )
            else:
                tensor[(g1, g2)] = ZERO
    return BilinearMap(tensor, f"chi({omega})")


def realize(form: BiderivationForm, w: Window, cfg: AlgebraConfig) -> BilinearMap:
    """Materialize lam*[.,.] + shift part on the window."""
    chi = chi_omega(form.omega, w, cfg)
    tensor: Dict[Pair, Element] = {}
    for (g1, g2), tail in chi.tensor.items():
        tensor[(g1, g2)] = bracket_basis(g1, g2, cfg).scaled(form.lam) + tail
    return BilinearMap(tensor, f"realize{form}")


def _faithful_pairwise(e: Element, w: Window, a1: GeneratorId, a2: GeneratorId) -> Element:
    n = w.radius
    kept = {
        h: c
        for h, c in e.terms.items()
        if abs(h.index) <= n
        and abs(h.index - a1.index) <= n
        and abs(h.index - a2.index) <= n
    }
    return Element(kept)


def biderivation_defects(f: BilinearMap, w: Window, cfg: AlgebraConfig) -> DefectReport:
    """Both identities over closed window triples.

    Identity (1) is checked for unordered first pairs (swapping x and y
    negates it) and identity (2) for unordered last pairs; diagonal pairs
    make each identity trivially zero and are skipped.  A triple is closed
    when the bracketed argument pair is window-supported and both
    re-bracketed values stay window-supported; the defect is compared on
    the coordinates anchored to the re-bracketed arguments.
    """
    rep = DefectReport()
    gens = w.generators(cfg)
    ten = f.tensor
    n = w.radius
    for a in gens:
        for b in gens:
            if (a, b) not in ten:
                raise KeyError(f"bilinear map {f.label or '?'} undefined on ({a}, {b})")
    tab: Dict[Pair, Tuple[Tuple[GeneratorId, Fraction], ...]] = {}

    def bb(a: GeneratorId, b: GeneratorId) -> Tuple[Tuple[GeneratorId, Fraction], ...]:
        t = tab.get((a, b))
        if t is None:
            t = tuple(bracket_basis(a, b, cfg).terms.items())
            tab[(a, b)] = t
        return t

    # For a monomial partner the products below never collide on an output
    # generator (the output family is injective in the other family), so a
    # plain assignment per term is exact and the first out-of-window term
    # already decides non-closedness.
    def mono_left(g: GeneratorId, terms: Dict[GeneratorId, Fraction]) -> Optional[Dict[GeneratorId, Fraction]]:
        out: Dict[GeneratorId, Fraction] = {}
        for h, c in terms.items():
            for hh, gamma in bb(g, h):
                if abs(hh.index) > n:
                    return None
                out[hh] = c * gamma
        return out

    def mono_right(g: GeneratorId, terms: Dict[GeneratorId, Fraction]) -> Optional[Dict[GeneratorId, Fraction]]:
        out: Dict[GeneratorId, Fraction] = {}
        for h, c in terms.items():
            for hh, gamma in bb(h, g):
                if abs(hh.index) > n:
                    return None
                out[hh] = c * gamma
        return out

    def settle(
        inputs: Tuple[GeneratorId, GeneratorId, GeneratorId],
        acc: Dict[GeneratorId, Fraction],
        r1: Dict[GeneratorId, Fraction],
        r2: Dict[GeneratorId, Fraction],
        a1: GeneratorId,
        a2: GeneratorId,
        rule: str,
    ) -> None:
        for part in (r1, r2):
            for h, c in part.items():
                nv = acc.get(h, Fraction(0)) - c
                if nv:
                    acc[h] = nv
                else:
                    del acc[h]
        if acc:
            defect = Element(
                {
                    h: c
                    for h, c in acc.items()
                    if abs(h.index) <= n
                    and abs(h.index - a1.index) <= n
                    and abs(h.index - a2.index) <= n
                }
            )
            if not defect.is_zero:
                rep.record(inputs, defect, rule)

    closed = 0
    for i, g1 in enumerate(gens):
        for g2 in gens[i + 1:]:
            br = bb(g1, g2)
            if br and abs(br[0][0].index) > n:
                continue
            for g3 in gens:
                # (1): f([g1,g2], g3) - [g1, f(g2,g3)] - [f(g1,g3), g2]
                r1 = mono_left(g1, ten[(g2, g3)].terms)
                if r1 is None:
                    continue
                r2 = mono_right(g2, ten[(g1, g3)].terms)
                if r2 is None:
                    continue
                closed += 1
                acc: Dict[GeneratorId, Fraction] = {}
                for b, cb in br:
                    for h, c in ten[(b, g3)].terms.items():
                        acc[h] = cb * c
                settle((g1, g2, g3), acc, r1, r2, g1, g2, "identity-1")
    rep.tick(closed)
    closed = 0
    for g1 in gens:
        for j, g2 in enumerate(gens):
            for g3 in gens[j + 1:]:
                br = bb(g2, g3)
                if br and abs(br[0][0].index) > n:
                    continue
                # (2): f(g1, [g2,g3]) - [f(g1,g2), g3] - [g2, f(g1,g3)]
                r1 = mono_right(g3, ten[(g1, g2)].terms)
                if r1 is None:
                    continue
                r2 = mono_left(g2, ten[(g1, g3)].terms)
                if r2 is None:
                    continue
                closed += 1
                acc = {}
                for b, cb in br:
                    for h, c in ten[(g1, b)].terms.items():
                        acc[h] = cb * c
                settle((g1, g2, g3), acc, r1, r2, g2, g3, "identity-2")
    rep.tick(closed)
    return rep


class PairCoords:
    """Column enumeration for window tensors: ((g1, g2), h), lexicographic."""

    def __init__(self, w: Window, cfg: AlgebraConfig):
        self.window = w
        self.gens: List[GeneratorId] = w.generators(cfg)
        self.pos: Dict[GeneratorId, int] = {g: i for i, g in enumerate(self.gens)}
        self.n = len(self.gens)
        self.col_count = self.n ** 3

    def col(self, g1: GeneratorId, g2: GeneratorId, h: GeneratorId) -> int:
        n = self.n
        return (self.pos[g1] * n + self.pos[g2]) * n + self.pos[h]

    def at(self, col: int) -> Tuple[GeneratorId, GeneratorId, GeneratorId]:
        n = self.n
        col, k = divmod(col, n)
        i, j = divmod(col, n)
        return self.gens[i], self.gens[j], self.gens[k]

    def encode(self, f: BilinearMap) -> SparseVec:
        v: SparseVec = {}
        for g1 in self.gens:
            for g2 in self.gens:
                for h, c in f.value(g1, g2).terms.items():
                    if h in self.pos:
                        v[self.col(g1, g2, h)] = c
        return v

    def decode(self, v: SparseVec, label: str = "") -> BilinearMap:
        tensor: Dict[Pair, Element] = {
            (g1, g2): ZERO for g1 in self.gens for g2 in self.gens
        }
        buckets: Dict[Pair, Dict[GeneratorId, Fraction]] = {}
        for col, c in v.items():
            g1, g2, h = self.at(col)
            buckets.setdefault((g1, g2), {})[h] = c
        for pair, terms in buckets.items():
            tensor[pair] = Element(terms)
        return BilinearMap(tensor, label)

    def interior_columns(self) -> Set[int]:
        """Coordinates where window encodings of genuine solutions are
        exact: both arguments in the interior and the value shift small
        enough that |h| <= N is automatic."""
        r = self.window.interior_radius
        budget = self.window.radius - 2 * r
        cols = set()
        inner = [g for g in self.gens if abs(g.index) <= r]
        for g1 in inner:
            for g2 in inner:
                s = g1.index + g2.index
                for h in self.gens:
                    if abs(h.index - s) <= budget:
                        cols.add(self.col(g1, g2, h))
        return cols


def representable_shifts(w: Window) -> List[int]:
    """Shifts k whose central-shift map is fully visible on the interior:
    |m + n + k| <= N for all interior m, n."""
    cap = w.radius - 2 * w.interior_radius
    return list(range(-cap, cap + 1))


def identity1_rows(coords: PairCoords, cfg: AlgebraConfig):
    """Faithful rows of identity (1), anchored at the bracketed pair."""
    w = coords.window
    n = w.radius
    gens = coords.gens
    for i, g1 in enumerate(gens):
        for g2 in gens[i + 1:]:
            br = bracket_basis(g1, g2, cfg)
            if not w.contains_element(br):
                continue
            for g3 in gens:
                for h in gens:
                    if abs(h.index - g1.index) > n or abs(h.index - g2.index) > n:
                        continue
                    row: SparseVec = {}
                    for b, cb in br.terms.items():
                        _bump(row, coords.col(b, g3, h), cb)
                    _value_terms(row, coords, cfg, (g2, g3), g1, h, left=True)
                    _value_terms(row, coords, cfg, (g1, g3), g2, h, left=False)
                    yield row


def identity2_rows(coords: PairCoords, cfg: AlgebraConfig):
    """Faithful rows of identity (2), anchored at the bracketed pair."""
    w = coords.window
    n = w.radius
    gens = coords.gens
    for g1 in gens:
        for j, g2 in enumerate(gens):
            for g3 in gens[j + 1:]:
                br = bracket_basis(g2, g3, cfg)
                if not w.contains_element(br):
                    continue
                for h in gens:
                    if abs(h.index - g2.index) > n or abs(h.index - g3.index) > n:
                        continue
                    row: SparseVec = {}
                    for b, cb in br.terms.items():
                        _bump(row, coords.col(g1, b, h), cb)
                    _value_terms(row, coords, cfg, (g1, g2), g3, h, left=False)
                    _value_terms(row, coords, cfg, (g1, g3), g2, h, left=True)
                    yield row


def biderivation_constraint_matrix(w: Window, cfg: AlgebraConfig) -> Tuple[SparseMatrix, PairCoords]:
    """The exact linear system cutting out all window biderivations.

    One row per identity, closed triple and faithful output coordinate;
    anchors are (g1, g2) for identity (1) and (g2, g3) for identity (2).
    """
    coords = PairCoords(w, cfg)
    m = SparseMatrix(coords.col_count)
    for row in identity1_rows(coords, cfg):
        m.add_row(row)
    for row in identity2_rows(coords, cfg):
        m.add_row(row)
    return m, coords


def _value_terms(
    row: SparseVec,
    coords: PairCoords,
    cfg: AlgebraConfig,
    source: Pair,
    partner: GeneratorId,
    h: GeneratorId,
    left: bool,
) -> None:
    """Subtract the [partner, f(source)] (left) or [f(source), partner]
    (right) contribution at coordinate h."""
    idx = h.index - partner.index
    for fam in ("L", "Y", "M"):
        if not cfg.valid_index(fam, idx):
            continue
        cand = gen(fam, idx)
        if cand not in coords.pos:
            continue
        if left:
            gamma = bracket_basis(partner, cand, cfg).coefficient(h)
        else:
            gamma = bracket_basis(cand, partner, cfg).coefficient(h)
        if gamma:
            _bump(row, coords.col(source[0], source[1], cand), -gamma)


def predicted_biderivation_maps(w: Window, cfg: AlgebraConfig) -> List[BilinearMap]:
    """Spanning set of the classified family on the window: the bracket
    itself plus one single-shift central map per representable shift."""
    maps = [realize(BiderivationForm(Fraction(1), EMPTY_OMEGA), w, cfg)]
    for k in representable_shifts(w):
        maps.append(chi_omega(OmegaSet({k: 1}), w, cfg))
    return maps


@dataclass
class BiderivationClassification:
    """Solver kernel versus the classified span, with interior comparison."""

    coords: PairCoords
    matrix: SparseMatrix
    kernel: SpanBasis
    predicted_vectors: List[SparseVec]
    predicted_in_kernel: bool
    interior_kernel: SpanBasis
    interior_predicted: SpanBasis
    shifts: List[int]

    @property
    def kernel_dimension(self) -> int:
        return self.kernel.dimension

    @property
    def interior_kernel_dimension(self) -> int:
        return self.interior_kernel.dimension

    @property
    def interior_predicted_dimension(self) -> int:
        return self.interior_predicted.dimension

    @property
    def interior_match(self) -> bool:
        return self.interior_kernel.vectors == self.interior_predicted.vectors

    @property
    def mutual_membership(self) -> Tuple[bool, bool]:
        return (
            self.interior_predicted.contains_all(self.interior_kernel.vectors),
            self.interior_kernel.contains_all(self.interior_predicted.vectors),
        )


def classify_biderivations(w: Window, cfg: AlgebraConfig) -> BiderivationClassification:
    if w.radius < 3:
        raise ValueError("biderivation solver needs window radius >= 3")
    m, coords = biderivation_constraint_matrix(w, cfg)
    kernel = kernel_basis(m)
    predicted = [coords.encode(f) for f in predicted_biderivation_maps(w, cfg)]
    inside = all(kernel.contains(v) for v in predicted)
    cols = coords.interior_columns()
    ik = span_basis((project_columns(v, cols) for v in kernel.vectors), coords.col_count)
    ip = span_basis((project_columns(v, cols) for v in predicted), coords.col_count)
    return BiderivationClassification(
        coords=coords,
        matrix=m,
        kernel=kernel,
        predicted_vectors=predicted,
        predicted_in_kernel=inside,
        interior_kernel=ik,
        interior_predicted=ip,
        shifts=representable_shifts(w),
    )


def skew_kernel_members(bc: BiderivationClassification) -> List[SparseVec]:
    """Basis of the skewsymmetric subspace of the solver kernel.

    Solves for kernel combinations whose symmetrization vanishes; the
    returned vectors decode to skewsymmetric window maps.
    """
    basis = bc.kernel.vectors
    coords = bc.coords
    rows: Dict[Tuple[GeneratorId, GeneratorId, GeneratorId], SparseVec] = {}
    for i, v in enumerate(basis):
        for col, c in v.items():
            g1, g2, h = coords.at(col)
            a, b = (g1, g2) if g1.sort_key() <= g2.sort_key() else (g2, g1)
            row = rows.setdefault((a, b, h), {})
            nv = row.get(i, Fraction(0)) + c
            if nv:
                row[i] = nv
            else:
                del row[i]
    m = SparseMatrix(len(basis))
    for key in sorted(
        rows, key=lambda k: (k[0].sort_key(), k[1].sort_key(), k[2].sort_key())
    ):
        m.add_row(rows[key])
    out: List[SparseVec] = []
    for u in kernel_basis(m).vectors:
        v: SparseVec = {}
        for i, c in u.items():
            vec_add_scaled(v, basis[i], c)
        out.append(v)
    return out


def match_form(f: BilinearMap, w: Window, cfg: AlgebraConfig) -> Optional[BiderivationForm]:
    """Fit f = lam*[.,.] + shift part on the interior, or report no match.

    lam comes from the first interior (L_m, L_n) pair with m != n; the
    mu_k come from the M coefficients of the residual on interior L pairs,
    cross-checked for consistency; finally f must equal the realized form
    on every ordered interior pair.  Returns None on any mismatch.
    """
    interior = w.interior_generators(cfg)
    l_gens = [g for g in interior if g.family == "L"]
    first = None
    for g1 in l_gens:
        for g2 in l_gens:
            if g1.index != g2.index:
                first = (g1, g2)
                break
        if first:
            break
    if first is None:
        return None
    g1, g2 = first
    lam = f.value(g1, g2).coefficient(gen("L", g1.index + g2.index)) / (
        g1.index - g2.index
    )
    mu: Dict[int, Fraction] = {}
    for a in l_gens:
        for b in l_gens:
            residual = f.value(a, b) - bracket_basis(a, b, cfg).scaled(lam)
            for h, c in residual.terms.items():
                if h.family != "M":
                    return None
                k_frac = h.index - a.index - b.index
                if k_frac.denominator != 1:
                    return None
                k = int(k_frac)
                if k in mu and mu[k] != c:
                    return None
                mu[k] = c
    form = BiderivationForm(lam, OmegaSet(mu))
    model = realize(form, w, cfg)
    for a in interior:
        for b in interior:
            if f.value(a, b) != model.value(a, b):
                return None
    return form


@dataclass
class BiderivationDecomposition:
    """Slice decomposition over interior generators.

    For interior x the slice y -> f(x,y) is a derivation; its inner part
    is phi(x) and its outer coefficients are (rho1, rho2, rho3)(x).  For
    interior y the slice x -> f(x,y) decomposes with inner part -psi(y)
    (sign fixed so the reassembled form uses [x, psi(y)]) and outer
    coefficients (theta1, theta2, theta3)(y).
    """

    phi: LinearOperator
    psi: LinearOperator
    rho: Tuple[Dict[GeneratorId, Fraction], ...]
    theta: Tuple[Dict[GeneratorId, Fraction], ...]

    def reassemble(self, x: GeneratorId, y: GeneratorId, w: Window, cfg: AlgebraConfig) -> Element:
        """rho1(x)D1(y) + rho2(x)D2(y) + rho3(x)D3(y) + [phi(x), y]."""
        out = bracket(self.phi.apply_basis(x), Element.monomial(y), cfg)
        for i, d in enumerate(("D1", "D2", "D3")):
            c = self.rho[i].get(x, Fraction(0))
            if c:
                out = out + builtin_derivation(d, w, cfg).apply_basis(y).scaled(c)
        return out


def decompose_biderivation(f: BilinearMap, w: Window, cfg: AlgebraConfig) -> BiderivationDecomposition:
    """Decompose every interior slice of a window biderivation.

    Boundary slices are excluded: their inner parts can need generators
    outside the window, so only interior slices decompose faithfully.
    Raises DecompositionError when some slice is not of the derivation
    shape (f was not a biderivation on this window).
    """
    gens = w.generators(cfg)
    interior = w.interior_generators(cfg)
    phi_action: Dict[GeneratorId, Element] = {}
    psi_action: Dict[GeneratorId, Element] = {}
    rho: Tuple[Dict[GeneratorId, Fraction], ...] = ({}, {}, {})
    theta: Tuple[Dict[GeneratorId, Fraction], ...] = ({}, {}, {})
    for x in interior:
        slice_op = LinearOperator({g: f.value(x, g) for g in gens}, f"f({x}, .)")
        dec = decompose_derivation(slice_op, w, cfg)
        phi_action[x] = dec.inner_part
        rho[0][x], rho[1][x], rho[2][x] = dec.a, dec.b, dec.c
    for y in interior:
        slice_op = LinearOperator({g: f.value(g, y) for g in gens}, f"f(., {y})")
        dec = decompose_derivation(slice_op, w, cfg)
        psi_action[y] = -dec.inner_part
        theta[0][y], theta[1][y], theta[2][y] = dec.a, dec.b, dec.c
    return BiderivationDecomposition(
        phi=LinearOperator(phi_action, "phi"),
        psi=LinearOperator(psi_action, "psi"),
        rho=rho,
        theta=theta,
    )
