import pytest

from src.algebra_loader import AlgebraLoader, emit_algebra, parse_algebra
from src.catalog import luk
from src.exceptions import ParseError
from src.utils import merge_config


def test_emitted_text_parses_back(four):
    assert parse_algebra(emit_algebra(four)).same_tables(four)


def test_prod_block_is_optional():
    A = parse_algebra("mvp 2\nneg 1 0\noplus 0 1\n1 1\n")
    assert A.has_zero_product
    assert A.variety.label == "PMVf"


def test_comments_and_layout_are_ignored():
    text = "# two elements\nmvp 2 neg 1 0  # negation\noplus 0 1 1 1 prod 0 0 0 1\n"
    assert parse_algebra(text).variety.label == "PMV1"


@pytest.mark.parametrize("text, line, fragment", [
    ("", 1, "empty input"),
    ("   # nothing\n", 1, "empty input"),
    ("mvp 2\nneg 1 0\nplus 0 1 1 1\n", 3, "expected 'oplus'"),
    ("mvp 2\nneg 1 5\n", 2, "outside"),
    ("mvp 2\nneg 1 0\noplus 0 1 1 x\n", 3, "found 'x'"),
    ("mvp 2\nneg 1 0\noplus 0 1 1 1\nextra\n", 4, "trailing"),
    ("mvp 2\nneg 1 0\noplus 0 1\n", 3, "end of input"),
    ("mvp 0\n", 1, "positive"),
])
def test_parse_errors_carry_line(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_algebra(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


class TestAlgebraLoader:
    @pytest.fixture
    def loader(self, tmp_path):
        return AlgebraLoader(merge_config({'outputs': {'reports': str(tmp_path)}}))

    def test_catalog_source(self, loader):
        A = loader.load("catalog:luk(3)")
        assert A.same_tables(luk(3))

    def test_file_round_trip(self, loader, tmp_path, l4):
        path = loader.write_file(l4, str(tmp_path / "algebras" / "chain.txt"))
        A = loader.load(path)
        assert A.name == "chain"
        assert A.same_tables(l4)

    def test_missing_file(self, loader, tmp_path):
        with pytest.raises(ParseError):
            loader.load(str(tmp_path / "absent.txt"))
