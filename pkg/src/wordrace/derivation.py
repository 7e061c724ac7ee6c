"""Semi-decider for W = 1: fair enumeration of products of conjugated relators.

A word equals 1 in <S | R> iff its free reduction coincides letter for
letter with the reduction of some product  t_1 R_{i_1}^{e_1} t_1^-1 ...
t_s R_{i_s}^{e_s} t_s^-1.  The enumeration is graded by stages: stage n
covers all products with factor count <= n, relator index <= n and
conjugator length <= n that were not covered by stage n-1, ordered within
a stage by factor count and then lexicographically by the per-factor key
(relator index, sign with + before -, conjugator index).  Stage 0 holds
exactly the empty product.  Relators are pulled from the source exactly
when a stage first needs them; an exhausted source just stops growing the
relator-index bound.

Zero exponents are not enumerated: an identity factor reduces away, so
products over e in {+1,-1} with varying factor count assemble the same
set of words without redundant candidates.  Relators that are empty words
are skipped for the same reason.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .presentation import Presentation
from .words import Word, concat_all, conjugate, count_words_up_to, invert, reduce_word, word_at_index


class DyckFactor(NamedTuple):
    conjugator: Word
    relator_index: int
    sign: int


class DyckProduct(NamedTuple):
    factors: tuple[DyckFactor, ...]
    stage: int


@dataclass(frozen=True)
class EqualityCertificate:
    """A product whose free reduction is letter-for-letter the target word."""

    product: DyckProduct
    target: Word
    max_relator_index: int


def max_relator_index(factors) -> int:
    return max((f.relator_index for f in factors), default=0)


def assemble(product: DyckProduct, p: Presentation) -> Word:
    """Free reduction of the product of conjugated relators; may pull relators."""
    parts = []
    for f in product.factors:
        rel = p.relator(f.relator_index)
        body = rel if f.sign == 1 else invert(rel)
        parts.append(conjugate(f.conjugator, body))
    return concat_all(parts)


class ProductStream:
    """Stateful enumerator over all Dyck products of one presentation.

    ``next_event()`` performs one quantum of work and returns either
    ``("product", product, assembled_word)`` or ``("stage", n)`` when the
    enumeration crosses into stage n.  ``cursor`` counts products only, so
    it realizes the fixed bijection cursor -> product.
    """

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        self.stage = -1
        self.cursor = 0
        self._stage_iter = None
        self._conj_words: list[Word] = []
        self._prev_avail = 0

    def next_event(self):
        if self._stage_iter is not None:
            item = next(self._stage_iter, None)
            if item is not None:
                self.cursor += 1
                return item
            self._stage_iter = None
        self.stage += 1
        self._stage_iter = self._begin_stage(self.stage)
        return ("stage", self.stage)

    def _begin_stage(self, n: int):
        if n == 0:
            return iter([("product", DyckProduct((), 0), b"")])
        p = self.presentation
        avail = p.available(n + 1)
        prev_avail = self._prev_avail
        self._prev_avail = avail
        nonempty = [(i, p.relator(i)) for i in range(avail) if p.relator(i) != b""]
        if not nonempty:
            return iter(())
        k = p.alphabet.k
        want = count_words_up_to(n, k)
        while len(self._conj_words) < want:
            self._conj_words.append(word_at_index(len(self._conj_words), p.alphabet))
        old_conj = count_words_up_to(n - 1, k)
        entries = []
        for rel_idx, rel in nonempty:
            inv_rel = invert(rel)
            for sign, body in ((1, rel), (-1, inv_rel)):
                for conj_idx in range(want):
                    t = self._conj_words[conj_idx]
                    entries.append(
                        (
                            rel_idx < prev_avail and conj_idx < old_conj,
                            conjugate(t, body),
                            DyckFactor(t, rel_idx, sign),
                        )
                    )
        return self._stage_products(n, entries)

    @staticmethod
    def _stage_products(n: int, entries):
        for m in range(1, n + 1):
            skippable = m <= n - 1
            for combo in itertools.product(entries, repeat=m):
                if skippable and all(e[0] for e in combo):
                    continue
                word = concat_all(e[1] for e in combo)
                yield ("product", DyckProduct(tuple(e[2] for e in combo), n), word)


def dyck_at_cursor(c: int, p: Presentation) -> DyckProduct:
    """The c-th product of the enumeration (sequential scan, O(c))."""
    if c < 0:
        raise ValueError("cursor must be a natural number")
    stream = ProductStream(p)
    seen = -1
    while True:
        ev = stream.next_event()
        if ev[0] == "product":
            seen += 1
            if seen == c:
                return ev[1]


class EqualityTask:
    """Single-target stepper: one candidate assembled and compared per step.

    Steps that cross a stage boundary do bookkeeping only; the following
    steps assemble candidates.  Deterministic given (presentation, target).
    """

    def __init__(self, presentation: Presentation, target: Word):
        self.presentation = presentation
        self.target = reduce_word(target)
        self.stream = ProductStream(presentation)
        self.steps_taken = 0
        self.certificate: EqualityCertificate | None = None

    @property
    def cursor(self) -> int:
        return self.stream.cursor

    def step(self) -> EqualityCertificate | None:
        """Advance one quantum; return a certificate once the target is found."""
        if self.certificate is not None:
            raise ValueError("task already resolved")
        self.steps_taken += 1
        ev = self.stream.next_event()
        if ev[0] == "product" and ev[2] == self.target:
            self.certificate = EqualityCertificate(
                product=ev[1],
                target=self.target,
                max_relator_index=max_relator_index(ev[1].factors),
            )
            return self.certificate
        return None


def prove_equal(p: Presentation, x: Word, budget: int) -> EqualityCertificate | None:
    """Run an EqualityTask for up to ``budget`` steps; None means exhausted."""
    task = EqualityTask(p, x)
    for _ in range(budget):
        cert = task.step()
        if cert is not None:
            return cert
    return None
