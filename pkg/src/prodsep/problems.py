"""Line-oriented input files: alphabet, named subgroups, word, primes.

Example::

    # a small worked instance
    alphabet: xy
    H1: xyXY, yy
    H2: xx
    word: xyX
    primes: 2

``gen:`` lines accumulate generators into a default subgroup named H,
for files that describe a single subgroup.  Comments run from ``#`` to
the end of the line.
"""

import re
from dataclasses import dataclass

from .groups import XGroup, fmt_perm, parse_perm
from .words import Alphabet


class ProblemParseError(ValueError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class Problem:
    alphabet: Alphabet
    subgroups: dict  # name -> tuple of words, in file order
    word: tuple = None
    primes: tuple = None

    def subgroup_list(self):
        return tuple(self.subgroups.values())


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")


def parse_problem(text):
    alphabet = None
    subgroups = {}
    word = None
    primes = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ProblemParseError(line_no, f"expected 'key: value', got {line!r}")
        key, value = (part.strip() for part in line.split(":", 1))
        if key == "alphabet":
            if alphabet is not None:
                raise ProblemParseError(line_no, "alphabet declared twice")
            try:
                alphabet = Alphabet(value)
            except ValueError as exc:
                raise ProblemParseError(line_no, str(exc)) from None
            continue
        if alphabet is None:
            raise ProblemParseError(line_no, "alphabet must be declared first")
        if key == "word":
            if word is not None:
                raise ProblemParseError(line_no, "word declared twice")
            word = _parse_word(alphabet, value, line_no)
        elif key == "primes":
            if primes is not None:
                raise ProblemParseError(line_no, "primes declared twice")
            try:
                primes = tuple(int(tok) for tok in value.split(",") if tok.strip())
            except ValueError:
                raise ProblemParseError(line_no, f"malformed primes {value!r}") from None
        elif key == "gen":
            subgroups.setdefault("H", [])
            subgroups["H"].append(_parse_word(alphabet, value, line_no))
        else:
            if not _NAME_RE.match(key):
                raise ProblemParseError(line_no, f"bad subgroup name {key!r}")
            if key in subgroups:
                raise ProblemParseError(line_no, f"duplicate subgroup name {key!r}")
            subgroups[key] = [_parse_word(alphabet, tok, line_no)
                              for tok in value.split(",")]
    if alphabet is None:
        raise ProblemParseError(0, "missing alphabet declaration")
    return Problem(alphabet, {name: tuple(gens) for name, gens in subgroups.items()},
                   word, primes)


def _parse_word(alphabet, token, line_no):
    try:
        return alphabet.parse(token)
    except ValueError as exc:
        raise ProblemParseError(line_no, str(exc)) from None


def parse_group_spec(text):
    """A permutation group: alphabet, carrier size, one cycle line per generator."""
    alphabet = None
    carrier = None
    perms = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ProblemParseError(line_no, f"expected 'key: value', got {line!r}")
        key, value = (part.strip() for part in line.split(":", 1))
        if key == "alphabet":
            alphabet = Alphabet(value)
        elif key == "carrier":
            carrier = int(value)
        else:
            if alphabet is None or carrier is None:
                raise ProblemParseError(line_no, "alphabet and carrier must come first")
            if key not in alphabet.symbols:
                raise ProblemParseError(line_no, f"unknown generator {key!r}")
            try:
                perms[key] = parse_perm(value, carrier)
            except ValueError as exc:
                raise ProblemParseError(line_no, str(exc)) from None
    if alphabet is None or carrier is None:
        raise ProblemParseError(0, "missing alphabet or carrier")
    missing = [s for s in alphabet.symbols if s not in perms]
    if missing:
        raise ProblemParseError(0, f"missing permutation for {missing[0]!r}")
    return XGroup(alphabet, [perms[s] for s in alphabet.symbols])


def format_group_spec(group):
    lines = [f"alphabet: {''.join(group.alphabet.symbols)}",
             f"carrier: {group.carrier}"]
    for s, x in zip(group.alphabet.symbols, group.alphabet.positive_letters()):
        lines.append(f"{s}: {fmt_perm(group.perm(x))}")
    return "\n".join(lines) + "\n"
