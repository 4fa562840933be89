from cdle.decls import Define
from cdle.elaborate import Elaborator, elaborate
from cdle.parser import parse_file

BOOLS = """
def Bool : ★ = ∀ X : ★ . Π t : X . Π f : X . X .
def tt : Bool = Λ X . λ t . λ f . t .
def ff : Bool = Λ X . λ t . λ f . f .
"""


def run(src, **kw):
    return elaborate(parse_file(src, "t.ced"), **kw)


def codes(report):
    return [str(d.code) for d in report.diagnostics]


def test_fail_directive_with_unprovable_delta_premise():
    r = run(BOOLS + "#fail δ (β{λ x . x}) : ∀ X : ★ . X .")
    assert r.ok
    assert "rejected as expected" in r.results[-1].output[0]


def test_top_inlined():
    r = run("def Top : ★ = { λ x . x ≃ λ x . x } .\n#check β{λ x . x x} : Top .")
    assert r.ok and codes(r) == []


def test_duplicate_definition():
    r = run(BOOLS + "def tt : Bool = Λ X . λ t . λ f . f .")
    assert codes(r) == ["DuplicateDefinition"]


def test_accepted_fail_directive_is_an_error():
    r = run(BOOLS + "#fail tt : Bool .")
    assert codes(r) == ["FailDirectiveAccepted"]


def test_continues_after_error():
    r = run(BOOLS + "#check tt : ∀ X : ★ . X .\n#check ff : Bool .")
    assert [res.ok for res in r.results] == [True, True, True, False, True]


def test_failed_definition_is_not_inlined():
    r = run("def bad : ∀ X : ★ . X = λ x . x .\n#check bad : ∀ X : ★ . X .")
    assert codes(r) == ["HeadMismatch", "UnboundVariable"]


def test_type_definition_kind_checked():
    r = run("def F : Π X : ★ . ★ = λ X : ★ . X .\ndef G : ★ = λ X : ★ . X .")
    assert codes(r) == ["KindMismatch"]


def test_conv_directive():
    r = run(BOOLS + "#conv (λ X : ★ . X) · Bool ≅ Bool .\n#conv Bool ≅ ∀ X : ★ . X .")
    assert codes(r) == ["ConversionFailed"]


def test_norm_and_synth_output():
    r = run(BOOLS + "#norm tt · Bool ff tt .\n#synth tt .")
    assert r.results[-2].output == ["Normal (2 steps): λ t . λ f . f"]
    assert r.results[-1].output == ["tt ⇒ Bool"]


def test_norm_exhaustion_is_an_error():
    r = run("#norm (λ x . x x) (λ x . x x) .", fuel=50)
    [res] = r.results
    assert codes(r) == ["FuelExhausted"]
    assert res.output[0].startswith("Exhausted after 50 steps")


def test_fuel_is_per_declaration():
    src = "#norm (λ x . λ y . x) (λ z . z) (λ z . z) .\n" * 3
    r = run(src, fuel=2)
    assert r.ok and [res.fuel_used for res in r.results] == [2, 2, 2]


def test_print_erased():
    r = run(BOOLS, print_erased=True)
    assert r.results[1].output == ["erased: λ t . λ f . t"]


def test_inlining_transparency():
    with_defs = run(BOOLS + "#check [tt, tt] : ι x : Bool . Bool .")
    manual = run("#check [Λ X . λ t . λ f . t, χ (∀ X : ★ . Π t : X . Π f : X . X) - "
                 "(Λ X . λ t . λ f . t)] : ι x : (∀ X : ★ . Π t : X . Π f : X . X) . "
                 "∀ X : ★ . Π t : X . Π f : X . X .")
    assert with_defs.results[-1].ok == manual.results[-1].ok is True


def test_diagnostics_carry_decl_span():
    r = run(BOOLS + "#check tt : ∀ X : ★ . X .")
    d = r.errors[0]
    assert (d.span.file, d.span.line) == ("t.ced", 5)


def test_diagnostics_fold_definitions():
    r = run(BOOLS + "#check tt : Π x : Bool . Bool .")
    assert "Bool" in r.errors[0].actual or "Bool" in r.errors[0].message


def test_elaborator_is_incremental():
    e = Elaborator()
    decls = parse_file(BOOLS)
    for d in decls:
        assert e.elaborate_one(d).ok
    assert all(isinstance(d, Define) for d in decls)


def test_fail_directive_does_not_count_exhaustion():
    omega = "(λ x . x x) (λ x . x x)"
    r = run(f"#fail β{{λ x . x}} : {{ {omega} ≃ λ x . x }} .", fuel=500)
    assert codes(r) == ["FuelExhausted"]


def test_fail_directive_drops_warnings_of_rejected_attempt():
    src = ("#fail Λ a . λ q . ρ q - β{λ x . x} : "
           "∀ a : { λ x . x ≃ λ x . x } . Π q : { a ≃ λ y . y } . { λ x . λ y . x ≃ a } .")
    r = run(src)
    assert r.ok and r.diagnostics == []


def test_depth_limit_becomes_a_diagnostic(monkeypatch):
    from cdle import stack
    src = "#norm λ s . λ z . " + "s (" * 1000 + "z" + ")" * 1000 + " ."
    decls = parse_file(src)
    monkeypatch.setattr(stack, "RECURSION_LIMIT", 1500)
    report = Elaborator(100).run(decls)
    assert codes(report) == ["FuelExhausted"]
    assert "depth limit" in report.errors[0].message


def test_parser_depth_limit_is_a_parse_error(monkeypatch):
    import pytest
    from cdle import stack
    from cdle.parser import ParseError
    monkeypatch.setattr(stack, "RECURSION_LIMIT", 1500)
    with pytest.raises(ParseError, match="nests too deeply"):
        parse_file("#norm " + "(" * 3000 + "λ x . x" + ")" * 3000 + " .")
