import pytest

from cdle.decls import (CheckDirective, ConvDirective, Define, FailDirective,
                        NormDirective, SynthDirective)
from cdle.diagnostics import Code
from cdle.parser import ParseError, parse_file, parse_kind, parse_term, parse_type
from cdle.printer import show, show_file
from cdle.syntax import (App, Beta, BVar, Chi, Delta, Eq, ErasedApp, Lam, Phi,
                         Proj1, Proj2, Rho, TLam, TypeApp, Var, category,
                         term_name)

from helpers import CORPUS_FILES, GLOBALS, Gen

PARSE = {"term": parse_term, "type": parse_type, "kind": parse_kind}


def test_define():
    [d] = parse_file("def id : ∀ X : ★ . Π x : X . X = Λ X . λ x . x .")
    assert isinstance(d, Define) and d.name.text == "id" and d.is_term
    assert d.body == TLam(d.body.ns, Lam(BVar(0)))


def test_check_directive():
    [d] = parse_file("#check β{λ x . x} : { λ x . x ≃ λ x . x } .")
    assert isinstance(d, CheckDirective)
    assert d.term == Beta(Lam(BVar(0))) and isinstance(d.type, Eq)


def test_all_directives():
    src = """
    #fail λ x . x : ∀ X : ★ . X .
    #conv (λ X : ★ . X) · B ≅ B .
    #norm (λ x . x) (λ y . y) .
    #synth x .
    def T : ★ = B .
    """
    kinds = [type(d) for d in parse_file(src)]
    assert kinds == [FailDirective, ConvDirective, NormDirective, SynthDirective, Define]


def test_parse_error_has_span():
    with pytest.raises(ParseError) as info:
        parse_file("def f : = .", "bad.ced")
    diag = info.value.diagnostic
    assert diag.code is Code.PARSE_ERROR
    assert (diag.span.file, diag.span.line, diag.span.col) == ("bad.ced", 1, 9)
    assert diag.span.start <= diag.span.end


def test_parse_error_on_second_line():
    with pytest.raises(ParseError) as info:
        parse_file("def Top : ★ = { λ x . x ≃ λ x . x } .\n#check ) : Top .")
    assert info.value.diagnostic.span.line == 2


def test_unknown_character_and_directive():
    with pytest.raises(ParseError):
        parse_file("#check x ! : X .")
    with pytest.raises(ParseError):
        parse_file("#frobnicate x .")


def test_keywords_are_reserved():
    with pytest.raises(ParseError):
        parse_term("λ lam . lam")


def test_application_is_left_associative():
    t = parse_term("f a b")
    assert isinstance(t, App) and isinstance(t.fn, App)


def test_binder_body_extends_right():
    t = parse_term("λ x . x x")
    assert t == Lam(App(BVar(0), BVar(0)))


def test_mixed_application_forms():
    t = parse_term("f - a · B b")
    assert isinstance(t, App) and isinstance(t.fn, TypeApp) and isinstance(t.fn.fn, ErasedApp)


def test_projections_postfix():
    g = {}
    assert parse_term("p.1.2", g) == Proj2(Proj1(parse_term("p", g)))


def test_construct_heads():
    g = {}
    assert isinstance(parse_term("δ q", g), Delta)
    assert isinstance(parse_term("ρ q - t", g), Rho)
    assert isinstance(parse_term("χ B - t", g), Chi)
    assert isinstance(parse_term("φ q - t {u}", g), Phi)
    # a construct heads an application chain
    assert isinstance(parse_term("(ρ q - t) u", g), App)


def test_namespace_by_spelling():
    g = {}
    t = parse_term("x · X", g)
    assert g["x"].is_term and not g["X"].is_term
    assert isinstance(t, TypeApp)


def test_shadowing_resolves_to_nearest_binder():
    assert parse_term("λ x . λ x . x") == Lam(Lam(BVar(0)))


def test_ascii_aliases():
    uni = parse_file("def id : ∀ X : ★ . Π x : X . X = Λ X . λ x . x .\n"
                     "#conv { (λ x . x) == λ y . y } ≅ { λ x . x ≃ λ x . x } .")
    asc = parse_file("def id : All X : * . Pi x : X . X = Lam X . lam x . x .\n"
                     "#conv { (lam x . x) == lam y . y } ~= { lam x . x == lam x . x } .")
    assert [d.__class__ for d in uni] == [d.__class__ for d in asc]
    assert uni[0].classifier == asc[0].classifier and uni[0].body == asc[0].body
    assert uni[1].lhs == asc[1].lhs and uni[1].rhs == asc[1].rhs


def test_comments_ignored():
    assert parse_file("-- nothing here\n") == []


def test_print_examples():
    assert show(parse_term("Λ X . λ x . x")) == "Λ X . λ x . x"
    assert show(parse_type("{ λ x . x ≃ λ x . x x }")) == "{ λ x . x ≃ λ x . x x }"


def test_printer_renames_to_avoid_capture():
    z = term_name("z")
    e = Lam(App(BVar(0), Var(z)), "z")
    text = show(e)
    assert text != "λ z . z z"
    assert parse_term(text, {"z": z}) == e


def test_ascii_printing_round_trips():
    for seed in range(200):
        e = Gen(seed).any(8)
        text = show(e, ascii=True)
        assert text.isascii()
        assert PARSE[category(e)](text, dict(GLOBALS)) == e


@pytest.mark.parametrize("path", CORPUS_FILES, ids=lambda p: p.name)
def test_corpus_round_trip(path):
    g = {}
    decls = parse_file(path.read_text(encoding="utf-8"), str(path), g)
    text = show_file(decls)
    again = parse_file(text, "printed", g)
    assert again == decls
    assert show_file(again) == text


@pytest.mark.parametrize("seed", range(0, 1000, 50))
def test_random_round_trip_batches(seed):
    for s in range(seed, seed + 50):
        e = Gen(s).any(10)
        assert PARSE[category(e)](show(e), dict(GLOBALS)) == e
