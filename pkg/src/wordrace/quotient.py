"""Semi-decider for X != 1: exhibit the extended group as a finite quotient.

The search looks for a finite table T, an element-to-word assignment tau,
and derivations (in the extended presentation G1 = <S | X u R>) of every
table equation  tau(u_i) tau(u_j) tau(u_k)^-1  with u_i.u_j = u_k, plus,
for every generator a, a coverage equation  a = tau(u_e)  for some witness
element e.  Together these make u |-> [tau(u)] a homomorphism T -> G1
whose image contains every generator class, so G1 is a quotient of T and
therefore finite.  Completeness: when G1 is finite its own table with any
representative words works.

Tau is word-valued: element 0 is pinned to the empty word and the other
images range over nonempty reduced words of bounded length, the bound
growing without limit.  The literal letter-valued surjections appear as a
strict-fidelity mode ("letters"): every element maps to a generator
letter, the map is onto the generators, and no coverage equations exist.

All candidates over one extended presentation share a single derivation
stream.  A candidate parks on its unresolved goal words; each newly
assembled word wakes the candidates waiting on it.  Any derivable word is
assembled by infinitely many products, so a goal registered after its
first assembly is still reached; no candidate ever consumes derivation
budget by itself, which is what makes the dovetail affordable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .derivation import EqualityCertificate, ProductStream, max_relator_index
from .presentation import Presentation
from .tables import DEFAULT_MAX_TABLE_ORDER, MultiplicationTable, table_at_cursor
from .words import Alphabet, Word, concat_all, count_words_up_to, invert, word_at_index

WORDS_MODE = "words"
LETTERS_MODE = "letters"


@dataclass(frozen=True)
class Assignment:
    """images[i] is the word tau(u_i); images[0] is empty in words mode."""

    table: MultiplicationTable
    images: tuple[Word, ...]


@dataclass(frozen=True)
class FinitenessCertificate:
    """A verified epimorphism witness: table, assignment, and derivations."""

    table: MultiplicationTable
    assignment: Assignment
    mode: str
    coverage: dict[int, int] | None  # generator index -> witness element (words mode)
    equation_certs: dict[tuple[int, int], EqualityCertificate]
    coverage_certs: dict[int, EqualityCertificate]


def equation_words(table: MultiplicationTable, assignment: Assignment):
    """The r*r reduced goal words tau(u_i) tau(u_j) tau(u_k)^-1, row-major.

    Empty results are trivially proved (the empty Dyck product derives them).
    """
    images = assignment.images
    cells = table.cells
    out = []
    for i in range(table.order):
        for j in range(table.order):
            w = concat_all((images[i], images[j], invert(images[cells[i][j]])))
            out.append((i, j, w))
    return out


def coverage_words(p: Presentation, assignment: Assignment, coverage):
    """Per generator g the reduced goal word g . tau(u_{coverage[g]})^-1."""
    out = []
    for g in range(p.alphabet.k):
        w = concat_all((bytes([2 * g]), invert(assignment.images[coverage[g]])))
        out.append((g, w))
    return out


def images_block_size(order: int, alphabet: Alphabet, length_bound: int) -> int:
    """Number of image tuples with nonempty words of length <= the bound."""
    w = count_words_up_to(length_bound, alphabet.k) - 1
    return w ** (order - 1)


def images_at_cursor(n: int, order: int, alphabet: Alphabet, length_bound: int):
    """Fixed enumeration of image tuples; None past the block end."""
    w = count_words_up_to(length_bound, alphabet.k) - 1
    if n < 0 or n >= w ** (order - 1):
        return None
    digits = []
    for _ in range(order - 1):
        n, d = divmod(n, w)
        digits.append(d)
    digits.reverse()
    return (b"",) + tuple(word_at_index(d + 1, alphabet) for d in digits)


def assignment_block_size(order: int, alphabet: Alphabet, length_bound: int) -> int:
    return images_block_size(order, alphabet, length_bound) * order ** alphabet.k


def assignment_at_cursor(n: int, table: MultiplicationTable, alphabet: Alphabet, length_bound: int):
    """Fixed enumeration of (Assignment, coverage map) pairs for one block.

    Returns None once the finite (table, length bound) block is exhausted;
    the dovetailer then grows the length bound.
    """
    r = table.order
    if n < 0 or n >= assignment_block_size(r, alphabet, length_bound):
        return None
    cov_digits = []
    for _ in range(alphabet.k):
        n, d = divmod(n, r)
        cov_digits.append(d)
    cov_digits.reverse()
    images = images_at_cursor(n, r, alphabet, length_bound)
    coverage = dict(enumerate(cov_digits))
    return Assignment(table, images), coverage


def surjective_letter_images(idx: int, order: int, alphabet: Alphabet):
    """Decode idx in [0, k^order) as a letter-valued tau; None if not onto."""
    k = alphabet.k
    digits = []
    for _ in range(order):
        idx, d = divmod(idx, k)
        digits.append(d)
    digits.reverse()
    if len(set(digits)) != k:
        return None
    return tuple(bytes([2 * d]) for d in digits)


class _Candidate:
    """One admitted (table, assignment) pair parked on its unresolved goals."""

    __slots__ = (
        "admission",
        "table",
        "images",
        "mode",
        "cell_words",
        "pending_eq",
        "eq_certs",
        "cov_resolved",
        "pending_cov",
    )

    def __init__(self, admission, table, images, mode):
        self.admission = admission
        self.table = table
        self.images = images
        self.mode = mode
        self.cell_words = {}
        self.pending_eq = set()
        self.eq_certs = {}
        self.cov_resolved = {}
        self.pending_cov = {}

    def complete(self) -> bool:
        if self.pending_eq:
            return False
        return all(e is not None for e in self.cov_resolved.values())

    def to_certificate(self) -> FinitenessCertificate:
        assignment = Assignment(self.table, self.images)
        equation_certs = {
            cell: self.eq_certs[w]
            for cell, w in self.cell_words.items()
            if w != b""
        }
        coverage = None
        if self.mode == WORDS_MODE:
            coverage = {g: e for g, (e, _) in self.cov_resolved.items()}
        coverage_certs = {g: c for g, (_, c) in self.cov_resolved.items() if c is not None}
        return FinitenessCertificate(
            table=self.table,
            assignment=assignment,
            mode=self.mode,
            coverage=coverage,
            equation_certs=equation_certs,
            coverage_certs=coverage_certs,
        )


class FinitenessTask:
    """Dovetails candidate admission with the shared derivation stream.

    Every admit_period-th step admits the next candidate from the graded
    (table cursor, length bound, assignment index) enumeration; all other
    steps advance the Dyck enumeration of the extended presentation by one
    quantum and wake any candidates waiting on the assembled word.  The
    first candidate whose goals are all discharged wins; ties break by
    admission order, so outcomes are deterministic.
    """

    ADMIT_PERIOD = 8

    def __init__(
        self,
        extended: Presentation,
        mode: str = WORDS_MODE,
        max_table_order: int = DEFAULT_MAX_TABLE_ORDER,
        instrument: bool = False,
    ):
        if not extended.extended:
            raise ValueError("presentation must be extended by the target word")
        if mode not in (WORDS_MODE, LETTERS_MODE):
            raise ValueError(f"unknown tau mode {mode!r}")
        self.extended = extended
        self.mode = mode
        self.max_table_order = max_table_order
        self.stream = ProductStream(extended)
        self.steps_taken = 0
        self.admitted = 0
        self.certificate: FinitenessCertificate | None = None
        self.visited: list | None = [] if instrument else None
        self._waiters: dict[Word, list] = {}
        self._candidates = self._candidate_stream()

    @property
    def derivation_cursor(self) -> int:
        return self.stream.cursor

    @property
    def parked_count(self) -> int:
        return self.admitted  # parked candidates are never discarded

    def _candidate_stream(self):
        # Yields admission tuples; yields None for an idle quantum when a
        # grade opens nothing new, and forever once the candidate space is
        # provably exhausted (finite letters-mode space under the order cap).
        alphabet = self.extended.alphabet
        pointers: dict[tuple[int, int], int] = {}
        grade = 0
        while True:
            tmax = grade // 2
            lmax = max(1, grade // 2)
            bound = 1 << grade
            yielded = False
            capped = False
            more_possible = False
            for t in range(tmax + 1):
                table = table_at_cursor(t, self.max_table_order)
                if table is None:
                    capped = True
                    break
                if self.mode == LETTERS_MODE:
                    key = (t, 0)
                    start = pointers.get(key, 0)
                    block = alphabet.k ** table.order
                    end = min(bound, block)
                    for idx in range(start, end):
                        images = surjective_letter_images(idx, table.order, alphabet)
                        if images is not None:
                            yielded = True
                            yield (t, 0, idx, table, images)
                    pointers[key] = end
                    if end < block:
                        more_possible = True
                    continue
                more_possible = True  # word-valued blocks grow with the length bound
                for length_bound in range(1, lmax + 1):
                    key = (t, length_bound)
                    start = pointers.get(key, 0)
                    end = min(bound, images_block_size(table.order, alphabet, length_bound))
                    for idx in range(start, end):
                        images = images_at_cursor(idx, table.order, alphabet, length_bound)
                        yielded = True
                        yield (t, length_bound, idx, table, images)
                    pointers[key] = end
            if capped and not more_possible:
                while True:
                    yield None
            if not yielded:
                yield None
            grade += 1

    def _admit(self) -> _Candidate | None:
        admission = next(self._candidates)
        if admission is None:
            return None
        t, length_bound, idx, table, images = admission
        if self.visited is not None:
            self.visited.append((t, length_bound, idx))
        cand = _Candidate(self.admitted, table, images, self.mode)
        self.admitted += 1
        assignment = Assignment(table, images)
        for i, j, w in equation_words(table, assignment):
            cand.cell_words[(i, j)] = w
            if w != b"":
                cand.pending_eq.add(w)
        if self.mode == WORDS_MODE:
            for g in range(self.extended.alphabet.k):
                cand.cov_resolved[g] = None
                witnesses = []
                for e in range(table.order):
                    w = concat_all((bytes([2 * g]), invert(images[e])))
                    if w == b"":
                        cand.cov_resolved[g] = (e, None)
                        witnesses = []
                        break
                    witnesses.append((e, w))
                cand.pending_cov[g] = witnesses
        if cand.complete():
            return cand
        for w in sorted(cand.pending_eq):
            self._waiters.setdefault(w, []).append((cand, "eq", None))
        if self.mode == WORDS_MODE:
            for g in range(self.extended.alphabet.k):
                for e, w in cand.pending_cov[g]:
                    self._waiters.setdefault(w, []).append((cand, "cov", (g, e)))
        return None

    def _derive(self) -> _Candidate | None:
        ev = self.stream.next_event()
        if ev[0] != "product":
            return None
        _, product, word = ev
        entries = self._waiters.pop(word, None)
        if entries is None:
            return None
        cert = EqualityCertificate(
            product=product,
            target=word,
            max_relator_index=max_relator_index(product.factors),
        )
        affected = []
        for cand, kind, payload in entries:
            if kind == "eq":
                if word in cand.pending_eq:
                    cand.pending_eq.discard(word)
                    cand.eq_certs[word] = cert
            else:
                g, e = payload
                if cand.cov_resolved.get(g) is None:
                    cand.cov_resolved[g] = (e, cert)
            affected.append(cand)
        winner = None
        for cand in affected:
            if cand.complete() and (winner is None or cand.admission < winner.admission):
                winner = cand
        return winner

    def step(self) -> FinitenessCertificate | None:
        """One dovetail quantum: a derivation step or a candidate admission."""
        if self.certificate is not None:
            raise ValueError("task already resolved")
        self.steps_taken += 1
        if self.steps_taken % self.ADMIT_PERIOD == 0:
            winner = self._admit()
        else:
            winner = self._derive()
        if winner is not None:
            self.certificate = winner.to_certificate()
            return self.certificate
        return None


def prove_finite(
    extended: Presentation,
    budget: int,
    mode: str = WORDS_MODE,
    max_table_order: int = DEFAULT_MAX_TABLE_ORDER,
) -> FinitenessCertificate | None:
    """Run a FinitenessTask for up to ``budget`` steps; None means exhausted."""
    task = FinitenessTask(extended, mode=mode, max_table_order=max_table_order)
    for _ in range(budget):
        cert = task.step()
        if cert is not None:
            return cert
    return None
