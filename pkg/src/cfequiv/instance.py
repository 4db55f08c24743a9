"""Line-oriented instance files.

::

    # comment
    rank 2
    [f]
    3 2 1 2        # 3 * rho_{a2 a1 a2}
    -1 e           # -1 * rho_epsilon
    [g]

Coefficients are signed decimal integers of any size, words are
space-separated generator indices or ``e`` for the empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from cfequiv.errors import InstanceError
from cfequiv.words import CountingFunction, MonoidSpec, Term

_SINT = re.compile(r"[+-]?[0-9]+\Z")
_UINT = re.compile(r"[0-9]+\Z")

# Python refuses str <-> int conversions above this many digits unless told otherwise;
# the chunked helpers below avoid touching the interpreter-wide limit.
_CHUNK = 2000


def decimal_to_int(s: str) -> int:
    neg = s.startswith("-")
    digits = s.lstrip("+-")
    n = _digits_to_int(digits)
    return -n if neg else n


def _digits_to_int(d: str) -> int:
    if len(d) <= _CHUNK:
        return int(d)
    half = len(d) // 2
    return _digits_to_int(d[:half]) * 10 ** (len(d) - half) + _digits_to_int(d[half:])


def int_to_decimal(n: int) -> str:
    if n < 0:
        return "-" + int_to_decimal(-n)
    if n < 10 ** _CHUNK:
        return str(n)
    # split at a power of ten roughly halving the digit count
    k = max(_CHUNK, n.bit_length() * 3 // 20)
    hi, lo = divmod(n, 10 ** k)
    return int_to_decimal(hi) + int_to_decimal(lo).rjust(k, "0")


@dataclass(frozen=True)
class Instance:
    spec: MonoidSpec
    f: CountingFunction
    g: CountingFunction

    def __post_init__(self):
        if self.f.spec != self.spec or self.g.spec != self.spec:
            raise ValueError("f and g must share the instance rank")


def parse_word(tokens: list[str], rank: int, lineno: int = 0) -> tuple:
    if tokens == ["e"]:
        return ()
    word = []
    for tok in tokens:
        if not _UINT.match(tok):
            raise InstanceError("E_SYNTAX", lineno, f"bad letter token {tok!r}")
        c = int(tok) if len(tok) < 20 else decimal_to_int(tok)
        if not 1 <= c <= rank:
            raise InstanceError("E_LETTER", lineno, f"generator {tok} outside [1, {rank}]")
        word.append(c)
    if not word:
        raise InstanceError("E_SYNTAX", lineno, "missing word")
    return tuple(word)


def parse_instance(text) -> Instance:
    """Parse instance text (bytes or str). Raises InstanceError with a line number."""
    if isinstance(text, (bytes, bytearray)):
        raw_lines = bytes(text).split(b"\n")
        lines = []
        for i, raw in enumerate(raw_lines, 1):
            try:
                lines.append(raw.decode("utf-8"))
            except UnicodeDecodeError:
                raise InstanceError("E_SYNTAX", i, "invalid UTF-8") from None
    else:
        lines = text.split("\n")

    rank = None
    section = None
    terms: dict[str, list[Term]] = {}
    for lineno, line in enumerate(lines, 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if rank is None:
            if tokens[0] != "rank":
                raise InstanceError("E_RANK", lineno, "expected 'rank <r>' header")
            if len(tokens) != 2 or not _UINT.match(tokens[1]) or len(tokens[1]) > 18:
                raise InstanceError("E_RANK", lineno, "malformed rank")
            rank = int(tokens[1])
            if rank < 2:
                raise InstanceError("E_RANK", lineno, f"rank must be >= 2, got {rank}")
            continue
        if body in ("[f]", "[g]"):
            name = body[1]
            if name in terms or (name == "g" and "f" not in terms):
                raise InstanceError("E_SECTION", lineno, f"unexpected section {body}")
            section = name
            terms[name] = []
            continue
        if body.startswith("["):
            raise InstanceError("E_SECTION", lineno, f"unknown section {body}")
        if tokens[0] == "rank":
            raise InstanceError("E_RANK", lineno, "duplicate rank header")
        if section is None:
            raise InstanceError("E_SECTION", lineno, "term before [f] header")
        if not _SINT.match(tokens[0]):
            raise InstanceError("E_COEF", lineno, f"malformed coefficient {tokens[0]!r}")
        if len(tokens) < 2:
            raise InstanceError("E_SYNTAX", lineno, "term line needs a word ('e' for empty)")
        coef = decimal_to_int(tokens[0])
        terms[section].append(Term(coef, parse_word(tokens[1:], rank, lineno)))

    last = len(lines)
    if rank is None:
        raise InstanceError("E_RANK", last, "missing rank header")
    for name in "fg":
        if name not in terms:
            raise InstanceError("E_SECTION", last, f"missing [{name}] section")
    spec = MonoidSpec(rank)
    return Instance(spec, CountingFunction(spec, tuple(terms["f"])), CountingFunction(spec, tuple(terms["g"])))


def format_word(w) -> str:
    return " ".join(map(str, w)) if w else "e"


def serialize_instance(inst: Instance) -> bytes:
    out = [f"rank {inst.spec.rank}"]
    for name, fn in (("f", inst.f), ("g", inst.g)):
        out.append(f"[{name}]")
        out.extend(f"{int_to_decimal(t.coef)} {format_word(t.word)}" for t in fn.terms)
    return ("\n".join(out) + "\n").encode("utf-8")


def read_instance(path) -> Instance:
    with open(path, "rb") as fh:
        return parse_instance(fh.read())
