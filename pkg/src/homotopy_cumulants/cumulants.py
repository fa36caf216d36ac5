"""Boolean cumulants of a chain map, over ordered partitions.

The n-th cumulant of a map e between algebras is the signed sum over all
ordered partitions (compositions) of n: multiply the inputs inside each
block, apply e blockwise, multiply the block images, and weight by
(-1)^(blocks - 1).  K_1 = e, and K_2(a, b) = e(ab) - e(a)e(b).  The
cumulants vanish identically when e is a map of algebras; here they
measure the failure of integration to respect the wedge and cup products.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .interval_model import (
    Cochain,
    PolyForm,
    cup,
    d_form,
    delta,
    integrate,
    wedge,
)


@dataclass(frozen=True)
class Composition:
    """An ordered partition of n into positive blocks."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        if not self.blocks or any(b < 1 for b in self.blocks):
            raise ValueError("blocks must be positive integers")

    @property
    def n(self) -> int:
        return sum(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def cut_set(self) -> frozenset[int]:
        """Positions in 1..n-1 where consecutive inputs are separated."""
        cuts = []
        acc = 0
        for b in self.blocks[:-1]:
            acc += b
            cuts.append(acc)
        return frozenset(cuts)

    @classmethod
    def from_cut_set(cls, n: int, cuts: frozenset[int]) -> "Composition":
        bounds = [0] + sorted(cuts) + [n]
        return cls(tuple(b - a for a, b in zip(bounds, bounds[1:])))

    def to_text(self) -> str:
        return "(" + ",".join(str(b) for b in self.blocks) + ")"


@lru_cache(maxsize=None)
def _compositions(n: int) -> tuple[Composition, ...]:
    out = []
    for mask in range(1 << (n - 1)):
        cuts = frozenset(i + 1 for i in range(n - 1) if mask >> i & 1)
        out.append(Composition.from_cut_set(n, cuts))
    return tuple(out)


def compositions(n: int) -> list[Composition]:
    """All 2^(n-1) compositions of n.

    Deterministic order: cut subsets of {1, .., n-1} enumerated by binary
    counting with position i on bit i-1, so (n) comes first and the all-ones
    composition sits at index 2^(n-1) - 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return list(_compositions(n))


def composition_sign(c: Composition) -> int:
    """+1 for an odd number of blocks, -1 for an even number."""
    return -1 if len(c) % 2 == 0 else 1


@dataclass(frozen=True)
class CumulantContext:
    """A chain map together with the two products it fails to intertwine.

    Chain-map values and recursive cumulant values are memoized per
    context, which makes exhaustive grid sweeps tractable.
    """

    chain_map: Callable[[PolyForm], Cochain]
    source_product: Callable[[PolyForm, PolyForm], PolyForm] = wedge
    target_product: Callable[[Cochain, Cochain], Cochain] = cup

    def __post_init__(self):
        object.__setattr__(self, "_map_cache", {})
        object.__setattr__(self, "_product_cache", {})
        object.__setattr__(self, "_recursive_cache", {})

    def apply(self, form: PolyForm) -> Cochain:
        cache = self._map_cache
        value = cache.get(form)
        if value is None:
            value = self.chain_map(form)
            cache[form] = value
        return value

    def multiply(self, a: PolyForm, b: PolyForm) -> PolyForm:
        cache = self._product_cache
        value = cache.get((a, b))
        if value is None:
            value = self.source_product(a, b)
            cache[(a, b)] = value
        return value

    def verify_chain_map(self, max_exponent: int = 4) -> bool:
        """Check chain_map . d = delta . chain_map on the monomial grid."""
        for dt in (False, True):
            for k in range(max_exponent + 1):
                a = PolyForm.monomial(k, dt=dt)
                if self.chain_map(d_form(a)) != delta(self.chain_map(a)):
                    return False
        return True


def integration_context(check_exponent: int = 6) -> CumulantContext:
    """The integration map context; the chain property is checked eagerly."""
    ctx = CumulantContext(integrate)
    if not ctx.verify_chain_map(check_exponent):
        raise ValueError("integration map failed the chain-map check")
    return ctx


def endpoint_evaluation_context() -> CumulantContext:
    """Test double: evaluate the degree-0 part at the endpoints.

    Restricted to degree-0 forms this is a genuine algebra morphism into
    the cochains, so all its cumulants vanish there.  It is not a chain
    map, hence no construction-time chain check.
    """
    def endpoint_evaluation(a: PolyForm) -> Cochain:
        return Cochain(a.part0(0), a.part0(1), 0)

    return CumulantContext(endpoint_evaluation)


def _run_images(ctx: CumulantContext,
                inputs: Sequence[PolyForm]) -> dict[tuple[int, int], Cochain]:
    """Chain-map images of all left-nested run products inputs[i..j]."""
    n = len(inputs)
    images: dict[tuple[int, int], Cochain] = {}
    for i in range(n):
        acc = inputs[i]
        images[(i, i)] = ctx.apply(acc)
        for j in range(i + 1, n):
            acc = ctx.multiply(acc, inputs[j])
            images[(i, j)] = ctx.apply(acc)
    return images


@dataclass(frozen=True)
class CumulantTerm:
    """One composition's contribution to a cumulant evaluation."""

    composition: Composition
    sign: int
    value: Cochain

    def signed_value(self) -> Cochain:
        return self.value.scale(self.sign)


def cumulant_terms(ctx: CumulantContext,
                   inputs: Sequence[PolyForm]) -> list[CumulantTerm]:
    """Term-by-term trace of the direct cumulant formula."""
    if len(inputs) == 0:
        raise ValueError("cumulant requires at least one input")
    images = _run_images(ctx, inputs)
    terms = []
    for comp in _compositions(len(inputs)):
        acc = None
        pos = 0
        for size in comp:
            image = images[(pos, pos + size - 1)]
            acc = image if acc is None else ctx.target_product(acc, image)
            pos += size
        terms.append(CumulantTerm(comp, composition_sign(comp), acc))
    return terms


def cumulant(ctx: CumulantContext, inputs: Sequence[PolyForm]) -> Cochain:
    """Direct signed sum over all compositions; K_1 is the chain map."""
    if len(inputs) == 0:
        raise ValueError("cumulant requires at least one input")
    images = _run_images(ctx, inputs)
    total = Cochain.zero()
    for comp in _compositions(len(inputs)):
        acc = None
        pos = 0
        for size in comp:
            image = images[(pos, pos + size - 1)]
            acc = image if acc is None else ctx.target_product(acc, image)
            if acc.is_zero():
                acc = None
                break
            pos += size
        if acc is None:
            continue
        total = total + acc if len(comp) % 2 else total - acc
    return total


def cumulant_recursive(ctx: CumulantContext,
                       inputs: Sequence[PolyForm]) -> Cochain:
    """K_n(a_1,..) = K_{n-1}(a_1 a_2, a_3,..) - e(a_1) K_{n-1}(a_2,..)."""
    if len(inputs) == 0:
        raise ValueError("cumulant requires at least one input")
    key = tuple(inputs)
    cache = ctx._recursive_cache
    value = cache.get(key)
    if value is not None:
        return value
    if len(key) == 1:
        value = ctx.apply(key[0])
    else:
        merged = (ctx.multiply(key[0], key[1]),) + key[2:]
        split = ctx.target_product(ctx.apply(key[0]),
                                   cumulant_recursive(ctx, key[1:]))
        value = cumulant_recursive(ctx, merged) - split
    cache[key] = value
    return value


def term_notation(composition: Composition, letters: str | None = None,
                  map_symbol: str = "p") -> str:
    """Render one cumulant term, e.g. (1,2) -> 'p(a)p(bc)'."""
    n = composition.n
    if letters is None:
        letters = "".join(chr(ord("a") + i) for i in range(n))
    pieces = []
    pos = 0
    for size in composition:
        pieces.append(f"{map_symbol}({letters[pos:pos + size]})")
        pos += size
    return "".join(pieces)


def symbolic_formula(n: int, map_symbol: str = "p") -> str:
    """The signed cumulant formula, e.g. K_2 = p(ab) - p(a)p(b)."""
    if n < 1:
        raise ValueError("n must be positive")
    letters = "".join(chr(ord("a") + i) for i in range(n))
    lhs = f"K{n}({','.join(letters)})"
    body = ""
    for comp in compositions(n):
        term = term_notation(comp, letters, map_symbol)
        if not body:
            body = term if composition_sign(comp) > 0 else f"-{term}"
        else:
            body += (" + " if composition_sign(comp) > 0 else " - ") + term
    return f"{lhs} = {body}"
