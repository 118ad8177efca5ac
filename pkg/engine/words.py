# engine/words.py
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Dict, FrozenSet, Iterable, Iterator, List, Literal, Optional, Sequence, Tuple

from sympy import isprime

from .models import SimpleModule


SymbolKind = Literal["res", "ind"]
AnnihilationReading = Literal["without_factor_two", "with_factor_two"]


class WordParseError(ValueError):
    pass


# ----------------------------
# Words
# ----------------------------

@dataclass(frozen=True)
class WordSymbol:
    kind: SymbolKind
    p: int

    def __str__(self) -> str:
        return f"{self.kind}{self.p}"


def res(p: int) -> WordSymbol:
    return WordSymbol("res", p)


def ind(p: int) -> WordSymbol:
    return WordSymbol("ind", p)


@dataclass(frozen=True)
class Word:
    """Symbols listed left to right; the rightmost symbol acts first."""
    symbols: Tuple[WordSymbol, ...] = ()

    @classmethod
    def of(cls, *symbols: WordSymbol) -> "Word":
        return cls(tuple(symbols))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.symbols + other.symbols)

    def __pow__(self, exponent: int) -> "Word":
        return Word(self.symbols * exponent)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[WordSymbol]:
        return iter(self.symbols)

    def primes(self) -> Tuple[int, ...]:
        return tuple(sorted({s.p for s in self.symbols}))

    def count(self, kind: SymbolKind, p: int) -> int:
        return sum(1 for s in self.symbols if s.kind == kind and s.p == p)

    @property
    def sort_key(self) -> Tuple[int, str]:
        return (len(self.symbols), print_word(self))

    def __str__(self) -> str:
        return print_word(self)


EMPTY_WORD = Word()

_FACTOR = re.compile(r"(res|ind)(\d+)(?:\^(\d+))?")


def parse_word(text: str) -> Word:
    """Parse `factor ('*' factor)*` with `factor := (res|ind) prime ('^' posint)?`; "1" is the empty word."""
    compact = re.sub(r"\s+", "", text)
    if compact in ("", "1"):
        return EMPTY_WORD
    symbols: List[WordSymbol] = []
    for factor in compact.split("*"):
        match = _FACTOR.fullmatch(factor)
        if not match:
            raise WordParseError(f"cannot parse factor '{factor}' in '{text}'")
        kind, p_text, exp_text = match.groups()
        p = int(p_text)
        if not isprime(p):
            raise WordParseError(f"{p} is not prime in '{factor}'")
        exponent = int(exp_text) if exp_text is not None else 1
        if exponent < 1:
            raise WordParseError(f"exponent must be positive in '{factor}'")
        symbols.extend([WordSymbol(kind, p)] * exponent)  # type: ignore[arg-type]
    return Word(tuple(symbols))


def print_word(w: Word) -> str:
    if not w.symbols:
        return "1"
    parts: List[str] = []
    i = 0
    while i < len(w.symbols):
        j = i
        while j < len(w.symbols) and w.symbols[j] == w.symbols[i]:
            j += 1
        run = j - i
        parts.append(str(w.symbols[i]) + (f"^{run}" if run > 1 else ""))
        i = j
    return "*".join(parts)


def enumerate_words(primes: Sequence[int], max_length: int, min_length: int = 0) -> Iterator[Word]:
    alphabet = [WordSymbol(kind, p) for p in primes for kind in ("res", "ind")]
    for length in range(min_length, max_length + 1):
        for symbols in product(alphabet, repeat=length):
            yield Word(tuple(symbols))


# ----------------------------
# Termini and nadirs
# ----------------------------

@dataclass(frozen=True)
class Nadir:
    value: int
    suffix_lengths: FrozenSet[int]


def _suffix_values(w: Word, p: int) -> List[int]:
    """values[L] = (#ind_p - #res_p) in the suffix of length L."""
    values = [0]
    running = 0
    for sym in reversed(w.symbols):
        if sym.p == p:
            running += 1 if sym.kind == "ind" else -1
        values.append(running)
    return values


def terminus(w: Word, p: int) -> int:
    return w.count("ind", p) - w.count("res", p)


def nadir(w: Word, p: int) -> Nadir:
    values = _suffix_values(w, p)
    low = min(values)
    return Nadir(low, frozenset(L for L, v in enumerate(values) if v == low))


def termini(w: Word, primes: Sequence[int]) -> Tuple[int, ...]:
    return tuple(terminus(w, p) for p in primes)


def nadirs(w: Word, primes: Sequence[int]) -> Tuple[int, ...]:
    return tuple(nadir(w, p).value for p in primes)


def total_nadir_suffixes(w: Word, primes: Iterable[int]) -> FrozenSet[int]:
    common: FrozenSet[int] | None = None
    for p in primes:
        lengths = nadir(w, p).suffix_lengths
        common = lengths if common is None else common & lengths
    if common is None:
        return frozenset(range(len(w) + 1))
    return common


def has_total_nadir(w: Word, primes: Iterable[int]) -> bool:
    return bool(total_nadir_suffixes(w, primes))


@dataclass(frozen=True)
class WordProfile:
    """Termini, nadirs and the total-nadir flag of a word over an ordered prime set."""
    primes: Tuple[int, ...]
    termini: Tuple[int, ...]
    nadirs: Tuple[int, ...]
    total_nadir: bool

    @property
    def start_primes(self) -> Tuple[int, ...]:
        return tuple(p for p, d in zip(self.primes, self.nadirs) if d != 0)

    @property
    def end_primes(self) -> Tuple[int, ...]:
        return tuple(p for p, e, d in zip(self.primes, self.termini, self.nadirs) if d != e)


def profile(w: Word, primes: Sequence[int]) -> WordProfile:
    ps = tuple(primes)
    return WordProfile(ps, termini(w, ps), nadirs(w, ps), has_total_nadir(w, ps))


def prime_subword(w: Word, p: int) -> Word:
    return Word(tuple(s for s in w.symbols if s.p == p))


def pair_content(w: Word, p: int) -> int:
    """Number of res_p ind_p pairs removed when reducing the p-subword to ind_p^l res_p^k."""
    e = terminus(w, p)
    d = nadir(w, p).value
    return w.count("ind", p) - (e - d)


def reorder_compatible(w1: Word, w2: Word, primes: Sequence[int]) -> bool:
    """Same per-prime subsequences and the same total-nadir status."""
    ps = tuple(sorted(set(primes) | set(w1.primes()) | set(w2.primes())))
    if any(prime_subword(w1, p) != prime_subword(w2, p) for p in ps):
        return False
    return has_total_nadir(w1, ps) == has_total_nadir(w2, ps)


# ----------------------------
# Annihilation
# ----------------------------

def critical_level(w: Word, primes: Sequence[int], reading: AnnihilationReading = "without_factor_two") -> int:
    base = prod(p ** (-nadir(w, p).value) for p in primes)
    return 2 * base if reading == "with_factor_two" else base


def annihilates_lemma(
    w: Word,
    primes: Sequence[int],
    n: int,
    reading: AnnihilationReading = "without_factor_two",
) -> bool:
    """Predicted zL == 0 for every simple L at level n."""
    for p in primes:
        if n % (p ** (-nadir(w, p).value)):
            return True
    return has_total_nadir(w, primes) and n == critical_level(w, primes, reading)


def annihilates_direct(w: Word, module: SimpleModule) -> bool:
    from .branching import apply_word
    from .models import GrothVector

    return not apply_word(w, GrothVector.of(module))


def annihilation_table(words: Iterable[Word], levels: Iterable[int]) -> Dict[Tuple[Word, int], Optional[bool]]:
    """Direct zero test on every Galois representative of each level; None when the outcome is mixed."""
    from .branching import galois_representatives

    reps = {n: galois_representatives(n) for n in levels}
    table: Dict[Tuple[Word, int], Optional[bool]] = {}
    for w in words:
        for n, modules in reps.items():
            outcomes = {annihilates_direct(w, m) for m in modules}
            table[(w, n)] = outcomes.pop() if len(outcomes) == 1 else None
    return table
