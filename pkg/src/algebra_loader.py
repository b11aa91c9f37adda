import logging
import os

from .algebra_core import FiniteAlgebra
from .catalog import build
from .exceptions import InvalidTableError, ParseError

logger = logging.getLogger(__name__)

CATALOG_PREFIX = "catalog:"


def _tokens(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        for token in raw.split('#', 1)[0].split():
            yield token, lineno


def parse_algebra(text, name="A"):
    """Parse the plain-text algebra format.

    ``mvp <n>``, then ``neg`` with n entries, ``oplus`` with n*n entries and
    optionally ``prod`` with n*n entries (zero product when absent). ``#``
    starts a comment; line breaks carry no meaning.
    """
    tokens = list(_tokens(text))
    last_line = max(len(text.splitlines()), 1)
    if not tokens:
        raise ParseError("empty input, expected 'mvp <n>'", line=1)

    pos = 0

    def take(expected):
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(f"unexpected end of input, expected {expected}", line=last_line)
        token = tokens[pos]
        pos += 1
        return token

    def keyword(word):
        token, line = take(f"'{word}'")
        if token != word:
            raise ParseError(f"expected '{word}', found '{token}'", line=line)

    def integer(expected, bound=None):
        token, line = take(expected)
        try:
            value = int(token)
        except ValueError:
            raise ParseError(f"expected {expected}, found '{token}'", line=line) from None
        if bound is not None and not 0 <= value < bound:
            raise ParseError(f"entry {value} is outside the carrier [0, {bound})", line=line)
        return value

    def block(word, count, n):
        keyword(word)
        return [integer(f"{word} entry", bound=n) for _ in range(count)]

    keyword("mvp")
    n = integer("carrier size")
    if n < 1:
        raise ParseError(f"carrier size must be positive, got {n}", line=tokens[1][1])

    neg = block("neg", n, n)
    oplus = block("oplus", n * n, n)
    prod = None
    if pos < len(tokens) and tokens[pos][0] == "prod":
        prod = block("prod", n * n, n)
    if pos < len(tokens):
        token, line = tokens[pos]
        raise ParseError(f"unexpected trailing token '{token}'", line=line)

    rows = [oplus[i * n:(i + 1) * n] for i in range(n)]
    prod_rows = None if prod is None else [prod[i * n:(i + 1) * n] for i in range(n)]
    try:
        return FiniteAlgebra(neg, rows, prod_rows, name=name)
    except InvalidTableError as e:
        raise ParseError(str(e)) from e


def emit_algebra(A):
    lines = [f"# {A.name}", f"mvp {A.size}", "neg", " ".join(str(v) for v in A.neg), "oplus"]
    lines += [" ".join(str(v) for v in row) for row in A.oplus]
    lines.append("prod")
    lines += [" ".join(str(v) for v in row) for row in A.prod]
    return "\n".join(lines) + "\n"


class AlgebraLoader:
    def __init__(self, config):
        self.config = config
        self.outputs_path = config['outputs']['reports']

    def load(self, source):
        """Resolve ``catalog:<expression>`` or a file path to an algebra"""
        if source.startswith(CATALOG_PREFIX):
            algebra = build(source[len(CATALOG_PREFIX):])
            logger.info(f"✅ Built {algebra.name}: {algebra.size} elements")
            return algebra
        return self.read_file(source)

    def read_file(self, file_path):
        if not os.path.exists(file_path):
            raise ParseError(f"file not found: {file_path}")
        with open(file_path, 'r') as f:
            text = f.read()
        name = os.path.splitext(os.path.basename(file_path))[0]
        algebra = parse_algebra(text, name=name)
        logger.info(f"✅ Loaded {name}: {algebra.size} elements from {file_path}")
        return algebra

    def write_file(self, algebra, file_path):
        directory = os.path.dirname(file_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(file_path, 'w') as f:
            f.write(emit_algebra(algebra))
        logger.info(f"💾 Algebra {algebra.name} written: {file_path}")
        return file_path
