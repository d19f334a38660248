"""Exact sparse polynomials in ``x_1, x_2, ...`` with integer coefficients.

Also home to the three polynomial-valued computations that serve as oracles
for the combinatorial models: Schubert polynomials by divided differences,
Schur polynomials by semistandard tableaux, and truncated Stanley symmetric
functions.
"""

from __future__ import annotations

import json
import threading
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .permutation import Permutation, one_m_times

Exponent = tuple[int, ...]

__all__ = [
    "IntPolynomial",
    "divided_difference",
    "schubert",
    "schur_via_ssyt",
    "ssyt",
    "stanley_truncation",
    "clear_schubert_cache",
]

# when True, every divided difference is checked by multiplying back
VERIFY_DIVISION = False


def _pad(exp: Exponent, nvars: int) -> Exponent:
    if len(exp) == nvars:
        return exp
    if len(exp) < nvars:
        return exp + (0,) * (nvars - len(exp))
    if any(exp[nvars:]):
        raise ValueError(f"exponent {exp} uses variables beyond x{nvars}")
    return exp[:nvars]


class IntPolynomial:
    """Immutable polynomial: exponent vector -> nonzero ``int`` coefficient."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for exp, coef in items:
            exp = _pad(tuple(int(e) for e in exp), nvars)
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            acc[exp] = acc.get(exp, 0) + int(coef)
        self.nvars = nvars
        self._terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, int]) -> "IntPolynomial":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int = 0) -> "IntPolynomial":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int = 0) -> "IntPolynomial":
        return cls._raw(nvars, {(0,) * nvars: 1})

    @classmethod
    def constant(cls, c: int, nvars: int = 0) -> "IntPolynomial":
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, i: int, nvars: int | None = None) -> "IntPolynomial":
        nvars = i if nvars is None else nvars
        if not 1 <= i <= nvars:
            raise ValueError(f"x{i} not among {nvars} variables")
        exp = [0] * nvars
        exp[i - 1] = 1
        return cls._raw(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coef: int = 1) -> "IntPolynomial":
        return cls(len(exp), {tuple(exp): coef})

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self.sorted_terms())

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in descending lexicographic order of exponent vectors."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def support_nvars(self) -> int:
        """Index of the largest variable that actually occurs."""
        top = 0
        for exp in self._terms:
            for k in range(len(exp), top, -1):
                if exp[k - 1]:
                    top = k
                    break
        return top

    def pad(self, nvars: int) -> "IntPolynomial":
        if nvars == self.nvars:
            return self
        return IntPolynomial._raw(nvars, {_pad(e, nvars): c for e, c in self._terms.items()})

    def _aligned(self, other: "IntPolynomial") -> tuple[dict, dict, int]:
        n = max(self.nvars, other.nvars)
        return self.pad(n)._terms, other.pad(n)._terms, n

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPolynomial.constant(other, self.nvars)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b, _ = self._aligned(other)
        return a == b

    def __hash__(self) -> int:
        t = self.pad(self.support_nvars)
        return hash(frozenset(t._terms.items()))

    def __add__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial.constant(other, self.nvars)
        a, b, n = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return IntPolynomial._raw(n, out)

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other: int) -> "IntPolynomial":
        return IntPolynomial.constant(other, self.nvars) - self

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            if not other:
                return IntPolynomial.zero(self.nvars)
            return IntPolynomial._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        a, b, n = self._aligned(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPolynomial._raw(n, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        result = IntPolynomial.one(self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def substitute_zero(self, i: int) -> "IntPolynomial":
        """Set ``x_i = 0``."""
        if i > self.nvars:
            return self
        return IntPolynomial._raw(self.nvars, {e: c for e, c in self._terms.items() if not e[i - 1]})

    def truncate(self, m: int) -> "IntPolynomial":
        """Set ``x_{m+1}, x_{m+2}, ...`` to zero and drop them."""
        return IntPolynomial._raw(
            m, {e[:m] + (0,) * (m - len(e[:m])): c for e, c in self._terms.items() if not any(e[m:])}
        )

    def swap_vars(self, i: int, j: int | None = None) -> "IntPolynomial":
        """Exchange ``x_i`` and ``x_j`` (default ``j = i + 1``)."""
        j = i + 1 if j is None else j
        n = max(self.nvars, i, j)
        out = {}
        for e, c in self.pad(n)._terms.items():
            e = list(e)
            e[i - 1], e[j - 1] = e[j - 1], e[i - 1]
            out[tuple(e)] = c
        return IntPolynomial._raw(n, out)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def coefficients(self) -> list[int]:
        return [c for _, c in self.sorted_terms()]

    def evaluate(self, values: Sequence[int]) -> int:
        total = 0
        for e, c in self._terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t *= v ** k
            total += t
        return total

    # --- serialization -------------------------------------------------

    def __repr__(self) -> str:
        return f"IntPolynomial({self.nvars}, {str(self)!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """``x1^2 + x1*x2 + x1*x3`` style, descending lex order."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            factors = [f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(e, start=1) if a]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_json_obj(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"exp": list(e), "coef": c} for e, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "IntPolynomial":
        return cls(int(obj["nvars"]), [(tuple(t["exp"]), t["coef"]) for t in obj["terms"]])

    @classmethod
    def from_json(cls, text: str) -> "IntPolynomial":
        return cls.from_json_obj(json.loads(text))


def _exact_divide_by_difference(g: IntPolynomial, i: int) -> IntPolynomial:
    """Quotient of ``g`` by ``x_i - x_{i+1}``; raises if the division is inexact."""
    rem = dict(g._terms)
    quot: dict[Exponent, int] = {}
    ii, jj = i - 1, i
    while rem:
        # leading term for an order with x_i largest
        exp = max(rem, key=lambda e: (e[ii], e))
        c = rem[exp]
        if exp[ii] == 0:
            raise ArithmeticError(f"{g} is not divisible by x{i} - x{i + 1}")
        q = list(exp)
        q[ii] -= 1
        qe = tuple(q)
        quot[qe] = quot.get(qe, 0) + c
        # subtract c * x^q * (x_i - x_{i+1}); the x_i part cancels the leading term
        del rem[exp]
        q[jj] += 1
        e3 = tuple(q)
        v = rem.get(e3, 0) + c
        if v:
            rem[e3] = v
        else:
            rem.pop(e3, None)
    return IntPolynomial._raw(g.nvars, {e: c for e, c in quot.items() if c})


def divided_difference(f: IntPolynomial, i: int, verify: bool | None = None) -> IntPolynomial:
    """``(f - s_i f) / (x_i - x_{i+1})``, computed by exact long division."""
    if i < 1:
        raise ValueError("divided difference index must be >= 1")
    f = f.pad(max(f.nvars, i + 1))
    num = f - f.swap_vars(i)
    q = _exact_divide_by_difference(num, i)
    if VERIFY_DIVISION if verify is None else verify:
        back = q * (IntPolynomial.var(i, f.nvars) - IntPolynomial.var(i + 1, f.nvars))
        if back != num:
            raise ArithmeticError(f"divided difference check failed for x{i} on {f}")
    return q


_schubert_cache: dict[tuple[int, ...], IntPolynomial] = {}
_schubert_lock = threading.Lock()


def clear_schubert_cache() -> None:
    with _schubert_lock:
        _schubert_cache.clear()


def _staircase(n: int) -> IntPolynomial:
    return IntPolynomial.monomial(tuple(n - k for k in range(1, n)) if n > 1 else (0,))


def _schubert(win: tuple[int, ...], n: int) -> IntPolynomial:
    key = Permutation(win).key
    with _schubert_lock:
        hit = _schubert_cache.get(key)
    if hit is not None:
        return hit
    # iterative climb to w0 along ascents, then descend with divided differences
    chain: list[tuple[tuple[int, ...], int]] = []
    cur = list(win)
    while True:
        k = Permutation(cur).key
        with _schubert_lock:
            hit = _schubert_cache.get(k)
        if hit is not None:
            poly = hit
            break
        asc = next((i for i in range(1, n) if cur[i - 1] < cur[i]), None)
        if asc is None:
            poly = _staircase(n)
            with _schubert_lock:
                _schubert_cache.setdefault(k, poly)
            break
        chain.append((k, asc))
        cur[asc - 1], cur[asc] = cur[asc], cur[asc - 1]
    for k, asc in reversed(chain):
        poly = divided_difference(poly, asc)
        with _schubert_lock:
            poly = _schubert_cache.setdefault(k, poly)
    return poly


def schubert(w: Permutation, nvars: int | None = None, check_ascents: bool = False) -> IntPolynomial:
    """Schubert polynomial of ``w`` by the divided-difference recursion.

    Results are memoized by the trimmed window.  With ``check_ascents`` every
    ascent ``i`` of ``w`` is tried and the answers must agree.
    """
    n = w.size
    poly = _schubert(w.padded(n), n)
    if check_ascents:
        win = w.padded(n)
        for i in range(1, n):
            if win[i - 1] < win[i]:
                up = list(win)
                up[i - 1], up[i] = up[i], up[i - 1]
                alt = divided_difference(_schubert(tuple(up), n), i, verify=True)
                if alt != poly:
                    raise AssertionError(f"ascent {i} gives a different answer for {w}")
    target = max(n - 1, 1) if nvars is None else nvars
    if poly.support_nvars > target:
        raise ValueError(f"Schubert polynomial of {w} needs {poly.support_nvars} variables")
    return poly.truncate(target) if target < poly.nvars else poly.pad(target)


def ssyt(shape: Sequence[int], k: int) -> Iterator[list[list[int]]]:
    """Semistandard Young tableaux (English, rows weakly increase, columns strictly)."""
    lam = [p for p in shape if p > 0]
    if any(lam[t] < lam[t + 1] for t in range(len(lam) - 1)):
        raise ValueError(f"not a partition: {list(shape)}")
    cells = [(r, c) for r, row in enumerate(lam) for c in range(row)]
    filling = [[0] * row for row in lam]

    def fill(pos: int) -> Iterator[list[list[int]]]:
        if pos == len(cells):
            yield [row[:] for row in filling]
            return
        r, c = cells[pos]
        lo = 1
        if c > 0:
            lo = max(lo, filling[r][c - 1])
        if r > 0:
            lo = max(lo, filling[r - 1][c] + 1)
        for v in range(lo, k + 1):
            filling[r][c] = v
            yield from fill(pos + 1)
        filling[r][c] = 0

    yield from fill(0)


def schur_via_ssyt(shape: Sequence[int], k: int) -> IntPolynomial:
    """``s_shape(x_1..x_k)`` as the content generating function of SSYT."""
    terms: dict[Exponent, int] = {}
    for t in ssyt(shape, k):
        exp = [0] * k
        for row in t:
            for v in row:
                exp[v - 1] += 1
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + 1
    return IntPolynomial(k, terms)


def stanley_truncation(w: Permutation, m: int) -> IntPolynomial:
    """``F_w(x_1..x_m, 0, 0, ...)`` computed as a truncated ``S_{1^m x w}``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return schubert(one_m_times(w, m), nvars=None).truncate(m)
