"""Presented free algebras with oriented rewriting to PBW normal form.

A presentation fixes named generators with positive weights in
precedence order (index = precedence, lowest first), scalar constants,
and rewrite rules `lhs -> rhs` whose left side is a single word of
length >= 2.  Orientation is verified against the degree-then-lex
reduction order; there is no completion.  Normal (irreducible) words
realize the PBW basis; the convention puts lower-precedence generators
on the left, so the quantum plane with Y < X has normal words Y^a X^b.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    OrientationError,
    ParseError,
    PresentationError,
    StepLimitExceeded,
)
from .exprparse import Evaluator

Word = tuple  # of generator indices

STEP_LIMIT = 10**6


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: tuple  # of (Word, coefficient) pairs, fixed order

    def rhs_map(self) -> dict:
        return dict(self.rhs)


class Presentation:
    """Immutable presentation; all rewriting runs through one instance."""

    def __init__(self, field, generators, weights, rules, constants=None, graded=False):
        self.field = field
        self.generators = tuple(generators)
        self.weights = tuple(int(w) for w in weights)
        self.constants = dict(constants or {})
        self.graded = bool(graded)
        if len(self.generators) != len(set(self.generators)):
            raise PresentationError("duplicate generator names")
        if len(self.weights) != len(self.generators):
            raise PresentationError("one weight per generator")
        if any(w < 1 for w in self.weights):
            raise PresentationError("generator weights must be positive")
        self.rules = tuple(
            RewriteRule(tuple(lhs), tuple((tuple(w), c) for w, c in rhs))
            for lhs, rhs in rules
        )
        self._validate_rules()
        self._nf_cache: dict = {}
        self._words_cache: dict = {}

    # -- basic word bookkeeping ---------------------------------------------

    def word_degree(self, w: Word) -> int:
        return sum(self.weights[g] for g in w)

    def word_key(self, w: Word):
        """Sort key realizing the degree-then-lex reduction order."""
        return (self.word_degree(w), w)

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.generators[w[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    def _validate_rules(self):
        seen = set()
        for rule in self.rules:
            if len(rule.lhs) < 2:
                raise PresentationError(
                    f"rule left side {self.format_word(rule.lhs)} is too short"
                )
            if any(g < 0 or g >= len(self.generators) for g in rule.lhs):
                raise PresentationError("rule uses an unknown generator")
            if rule.lhs in seen:
                raise PresentationError(
                    f"duplicate rule for {self.format_word(rule.lhs)}"
                )
            seen.add(rule.lhs)
            lhs_key = self.word_key(rule.lhs)
            for w, c in rule.rhs:
                if self.word_key(w) >= lhs_key:
                    raise OrientationError(
                        f"{self.format_word(rule.lhs)} does not dominate "
                        f"{self.format_word(w)} under degree-then-lex order"
                    )
                if self.graded and self.word_degree(w) != self.word_degree(rule.lhs):
                    raise PresentationError(
                        "graded presentation with an inhomogeneous rule "
                        f"{self.format_word(rule.lhs)}"
                    )

    # -- rewriting ------------------------------------------------------------

    def _find_redex(self, w: Word, strategy: str):
        """First (pos, rule) occurrence under the strategy, or None."""
        positions = range(len(w)) if strategy == "leftmost" else range(len(w) - 1, -1, -1)
        for pos in positions:
            for rule in self.rules:
                L = len(rule.lhs)
                if w[pos : pos + L] == rule.lhs:
                    return pos, rule
        return None

    def normal_form_word(self, w: Word, strategy: str = "leftmost") -> dict:
        """Normal form of a single word as a Word -> coefficient map."""
        key = (w, strategy)
        cached = self._nf_cache.get(key)
        if cached is not None:
            return cached
        out: dict = {}
        agenda = [(w, self.field.one)]
        steps = 0
        while agenda:
            word, coeff = agenda.pop()
            if not coeff:
                continue
            hit = self._find_redex(word, strategy)
            if hit is None:
                acc = out.get(word)
                acc = coeff if acc is None else acc + coeff
                if acc:
                    out[word] = acc
                elif word in out:
                    del out[word]
                continue
            steps += 1
            if steps > STEP_LIMIT:
                raise StepLimitExceeded(
                    f"rewriting of {self.format_word(w)} exceeded {STEP_LIMIT} steps"
                )
            pos, rule = hit
            head, tail = word[:pos], word[pos + len(rule.lhs) :]
            for rw, rc in rule.rhs:
                agenda.append((head + rw + tail, coeff * rc))
        self._nf_cache[key] = out
        return out

    def normal_form_map(self, raw: dict, strategy: str = "leftmost") -> dict:
        out: dict = {}
        for w, c in raw.items():
            if not c:
                continue
            for nw, nc in self.normal_form_word(w, strategy).items():
                acc = out.get(nw)
                acc = nc * c if acc is None else acc + nc * c
                if acc:
                    out[nw] = acc
                elif nw in out:
                    del out[nw]
        return out

    # -- normal word enumeration ----------------------------------------------

    def irreducible_words(self, n: int, exact: bool = False) -> list:
        """Irreducible words of degree <= n (or == n), degree-then-lex order."""
        key = (n, exact)
        cached = self._words_cache.get(key)
        if cached is not None:
            return cached
        found = []
        frontier = [()]
        while frontier:
            found.extend(frontier)
            nxt = []
            for w in frontier:
                base = self.word_degree(w)
                for g in range(len(self.generators)):
                    if base + self.weights[g] > n:
                        continue
                    cand = w + (g,)
                    if not self._tail_reducible(cand):
                        nxt.append(cand)
            frontier = nxt
        if exact:
            found = [w for w in found if self.word_degree(w) == n]
        found.sort(key=self.word_key)
        self._words_cache[key] = found
        return found

    def _tail_reducible(self, w: Word) -> bool:
        for rule in self.rules:
            L = len(rule.lhs)
            if L <= len(w) and w[-L:] == rule.lhs:
                return True
        return False

    # -- element constructors --------------------------------------------------

    def element(self, raw: dict) -> "AlgebraElement":
        return AlgebraElement(self, self.normal_form_map(raw))

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    @property
    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {(): self.field.one})

    def gen(self, name: str) -> "AlgebraElement":
        try:
            idx = self.generators.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None
        return AlgebraElement(self, {(idx,): self.field.one})

    def scalar(self, c) -> "AlgebraElement":
        if isinstance(c, int):
            c = self.field.from_int(c)
        return AlgebraElement(self, {(): c} if c else {})

    def format_element(self, coeffs: dict) -> str:
        if not coeffs:
            return "0"
        parts = []
        for w in sorted(coeffs, key=self.word_key, reverse=True):
            cs = self.field.format(coeffs[w])
            ws = self.format_word(w)
            if not w:
                parts.append(cs)
            elif cs == "1":
                parts.append(ws)
            elif cs == "-1":
                parts.append("-" + ws)
            else:
                if _needs_parens(cs):
                    cs = f"({cs})"
                parts.append(f"{cs}*{ws}")
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out

    def describe(self) -> str:
        gens = ", ".join(
            f"{g}(w={w})" if w != 1 else g
            for g, w in zip(self.generators, self.weights)
        )
        mode = "graded" if self.graded else "filtered"
        return f"<{gens} | {len(self.rules)} rules, {mode}>"


def _needs_parens(s: str) -> bool:
    return any(ch in s[1:] for ch in "+-") or "/" in s or " " in s


class AlgebraElement:
    """Finite coefficient map on normal words; always in normal form."""

    __slots__ = ("presentation", "coeffs")

    def __init__(self, presentation: Presentation, coeffs: dict):
        self.presentation = presentation
        self.coeffs = coeffs

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self):
        """Filtration degree: max word degree, or None for zero."""
        if not self.coeffs:
            return None
        return max(self.presentation.word_degree(w) for w in self.coeffs)

    def _check_same(self, other: "AlgebraElement"):
        if self.presentation is not other.presentation:
            raise PresentationError("elements of different presentations")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.presentation.scalar(other)
        self._check_same(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            acc = out.get(w)
            acc = c if acc is None else acc + c
            if acc:
                out[w] = acc
            elif w in out:
                del out[w]
        return AlgebraElement(self.presentation, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.presentation, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.presentation.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "AlgebraElement":
        if isinstance(c, int):
            c = self.presentation.field.from_int(c)
        if not c:
            return AlgebraElement(self.presentation, {})
        return AlgebraElement(self.presentation, {w: x * c for w, x in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        self._check_same(other)
        P = self.presentation
        out: dict = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                c = c1 * c2
                for nw, nc in P.normal_form_word(w1 + w2).items():
                    acc = out.get(nw)
                    acc = nc * c if acc is None else acc + nc * c
                    if acc:
                        out[nw] = acc
                    elif nw in out:
                        del out[nw]
        return AlgebraElement(P, out)

    def __rmul__(self, other):
        # scalars commute with everything; words never reach here
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise PresentationError("algebra elements take non-negative powers")
        out = self.presentation.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.presentation is other.presentation and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.presentation.scalar(other)
        return NotImplemented

    def __str__(self):
        return self.presentation.format_element(self.coeffs)

    def __repr__(self):
        return f"<{self}>"


# ---------------------------------------------------------------------------
# spec operations


def normal_form(P: Presentation, raw: dict, strategy: str = "leftmost") -> AlgebraElement:
    """Fixed point of the chosen rewriting strategy on a raw coefficient map."""
    return AlgebraElement(P, P.normal_form_map(raw, strategy))


def filtration_basis(P: Presentation, n: int) -> list:
    """Normal words of degree <= n, or exactly n when P is graded."""
    return P.irreducible_words(n, exact=P.graded)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a + b


@dataclass(frozen=True)
class Overlap:
    """An unresolved critical pair: one word, two distinct normal forms."""

    word: Word
    word_str: str
    left_nf: str
    right_nf: str


def confluence_check(P: Presentation, n: int) -> list:
    """All overlap words of degree <= n whose two reductions disagree."""
    findings = []
    seen = set()
    for r1 in P.rules:
        for r2 in P.rules:
            l1, l2 = r1.lhs, r2.lhs
            # suffix of l1 meets prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] != l2[:k]:
                    continue
                w = l1 + l2[k:]
                if P.word_degree(w) > n:
                    continue
                e1 = {rw + l2[k:]: rc for rw, rc in r1.rhs}
                e2 = {l1[:-k] + rw: rc for rw, rc in r2.rhs}
                _record_overlap(P, w, e1, e2, findings, seen)
            # l2 contained strictly inside l1
            if r1 is not r2 and len(l2) < len(l1):
                for j in range(len(l1) - len(l2) + 1):
                    if l1[j : j + len(l2)] != l2:
                        continue
                    w = l1
                    if P.word_degree(w) > n:
                        continue
                    e1 = r1.rhs_map()
                    e2 = {l1[:j] + rw + l1[j + len(l2) :]: rc for rw, rc in r2.rhs}
                    _record_overlap(P, w, e1, e2, findings, seen)
    findings.sort(key=lambda o: P.word_key(o.word))
    return findings


def _record_overlap(P, w, e1, e2, findings, seen):
    nf1 = P.normal_form_map(e1)
    nf2 = P.normal_form_map(e2)
    if nf1 != nf2:
        key = (w, P.format_element(nf1), P.format_element(nf2))
        if key not in seen:
            seen.add(key)
            findings.append(Overlap(w, P.format_word(w), key[1], key[2]))


def tensor_presentation(P: Presentation, Q: Presentation) -> Presentation:
    """Tensor product presentation: both rule families plus commutation.

    Q's generators are renamed on clashes; P generators keep the lower
    precedence block.  The generator filtration of the result is the
    tensor filtration of the factors.
    """
    if P.field is not Q.field:
        raise PresentationError("tensor factors must share the valued field")
    names = list(P.generators)
    for g in Q.generators:
        name = g
        suffix = 2
        while name in names:
            name = f"{g}_{suffix}"
            suffix += 1
        names.append(name)
    shift = len(P.generators)
    weights = P.weights + Q.weights
    rules = [(r.lhs, list(r.rhs)) for r in P.rules]
    for r in Q.rules:
        rules.append(
            (
                tuple(g + shift for g in r.lhs),
                [(tuple(g + shift for g in w), c) for w, c in r.rhs],
            )
        )
    one = P.field.one
    for j in range(shift, len(names)):
        for i in range(shift):
            rules.append(((j, i), [((i, j), one)]))
    constants = dict(P.constants)
    for k, v in Q.constants.items():
        if k in constants and constants[k] != v:
            raise PresentationError(f"constant {k!r} differs between factors")
        constants[k] = v
    return Presentation(
        P.field, names, weights, rules, constants, graded=P.graded and Q.graded
    )


# ---------------------------------------------------------------------------
# parsing


def parse_presentation(
    field,
    generators,
    relations,
    constants=None,
    graded=False,
) -> Presentation:
    """Build a presentation from relation strings.

    `generators`: sequence of names or (name, weight) pairs, precedence
    order.  `relations`: strings "lhs = rhs" with lhs a single monomial
    word of length >= 2.  `constants`: name -> field element or string.
    """
    names = []
    weights = []
    for g in generators:
        if isinstance(g, str):
            names.append(g)
            weights.append(1)
        else:
            names.append(g[0])
            weights.append(int(g[1]))
    consts = {}
    for cname, cval in (constants or {}).items():
        consts[cname] = field.parse(cval) if isinstance(cval, str) else cval

    proto = Presentation(field, names, weights, [], consts, graded=False)

    def lookup(name):
        if name in proto.generators:
            return proto.gen(name)
        if name in consts:
            return consts[name]
        return field.parse(name)  # field variables; raises ParseError otherwise

    def divide(a, b):
        if isinstance(a, AlgebraElement) or isinstance(b, AlgebraElement):
            raise ParseError("division is only defined for scalars")
        return a / b

    ev = Evaluator(lookup=lookup, from_int=field.from_int, divide=divide)

    rules = []
    for rel in relations:
        if rel.count("=") != 1:
            raise ParseError(f"relation needs exactly one '=': {rel!r}")
        lhs_text, rhs_text = rel.split("=")
        lhs_el = ev.eval(lhs_text)
        if not isinstance(lhs_el, AlgebraElement):
            raise ParseError(f"left side of {rel!r} is not a word")
        if len(lhs_el.coeffs) != 1:
            raise ParseError(f"left side of {rel!r} must be a single monomial word")
        ((lhs_word, lhs_coeff),) = lhs_el.coeffs.items()
        if lhs_coeff != field.one:
            raise ParseError(f"left side of {rel!r} must have coefficient 1")
        rhs_el = ev.eval(rhs_text)
        if not isinstance(rhs_el, AlgebraElement):
            rhs_el = proto.scalar(rhs_el)
        rules.append((lhs_word, list(rhs_el.coeffs.items())))

    return Presentation(field, names, weights, rules, consts, graded=graded)
