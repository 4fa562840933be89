import pytest

from cdle.conversion import (Conv, convert_kinds, convert_types,
                             type_beta_normalize, type_beta_step, type_whnf)
from cdle.lam import Fuel
from cdle.parser import parse_kind, parse_type
from cdle.syntax import STAR, term_name, type_name

G = {s: term_name(s) for s in ("a", "b", "t")}
G.update({s: type_name(s) for s in ("A", "B", "F", "X")})


def Ty(text):
    return parse_type(text, dict(G))


def K(text):
    return parse_kind(text, dict(G))


def test_beta_normalize_type_application():
    assert type_beta_normalize(Ty("(λ X : ★ . X) · B")) == (Ty("B"), False)


def test_beta_normalize_term_application():
    assert type_beta_normalize(Ty("(λ x : A . { x ≃ x }) t"))[0] == Ty("{ t ≃ t }")


def test_beta_normalize_no_redex():
    e = Ty("Π x : A . X")
    assert type_beta_normalize(e) == (e, False)


def test_beta_normalize_under_binders():
    e = Ty("Π x : A . (λ Y : ★ . Y) · B")
    assert type_beta_normalize(e)[0] == Ty("Π x : A . B")


def test_beta_normalize_leaves_term_leaves_alone():
    e = Ty("{ (λ x . x) a ≃ a }")
    assert type_beta_normalize(e)[0] == e


def test_beta_normalize_exhausts():
    # the type-level analogue of Ω cannot be kinded, but normalization must still stop
    e = Ty("(λ X : ★ . X) · ((λ X : ★ . X) · B)")
    _, exhausted = type_beta_normalize(e, Fuel(1))
    assert exhausted


def test_whnf_examples():
    assert type_whnf(Ty("(λ X : ★ . Π x : X . X) · B"))[0] == Ty("Π x : B . B")
    e = Ty("Π x : B . (λ X : ★ . X) · B")
    assert type_whnf(e)[0] == e
    v = Ty("X t a")
    assert type_whnf(v)[0] == v


def test_type_beta_step():
    assert type_beta_step(Ty("(λ X : ★ . X) · B")) == Ty("B")
    assert type_beta_step(Ty("B")) is None


def test_convert_examples():
    assert convert_types(Ty("(λ X : ★ . X) · B"), Ty("B")) is Conv.CONVERTIBLE
    assert convert_types(Ty("{ (λ x . x) a ≃ b }"), Ty("{ a ≃ b }")) is Conv.CONVERTIBLE
    assert convert_types(Ty("F ((λ x . x) a)"), Ty("F a")) is Conv.CONVERTIBLE


def test_convert_negative():
    assert convert_types(Ty("{ a ≃ b }"), Ty("{ b ≃ a }")) is Conv.NOT_CONVERTIBLE
    assert convert_types(Ty("Π x : A . A"), Ty("∀ x : A . A")) is Conv.NOT_CONVERTIBLE
    assert convert_types(Ty("A"), Ty("B")) is Conv.NOT_CONVERTIBLE


def test_convert_binder_domains_must_convert():
    assert convert_types(Ty("Π x : A . B"), Ty("Π x : B . B")) is Conv.NOT_CONVERTIBLE
    assert convert_types(Ty("Π x : (λ X : ★ . X) · A . B"), Ty("Π y : A . B")) is Conv.CONVERTIBLE


def test_no_type_level_eta():
    assert convert_types(Ty("λ X : ★ . F · X"), Ty("F")) is Conv.NOT_CONVERTIBLE


def test_convert_exhausts_on_divergent_leaf():
    omega = "(λ x . x x) (λ x . x x)"
    r = convert_types(Ty(f"{{ {omega} ≃ a }}"), Ty("{ a ≃ a }"), Fuel(500))
    assert r is Conv.EXHAUSTED


def test_convert_kinds():
    assert convert_kinds(STAR, STAR) is Conv.CONVERTIBLE
    assert convert_kinds(K("Π x : (λ X : ★ . X) · B . ★"), K("Π x : B . ★")) is Conv.CONVERTIBLE
    assert convert_kinds(STAR, K("Π X : ★ . ★")) is Conv.NOT_CONVERTIBLE


def test_conv_is_truthy_only_when_convertible():
    assert Conv.CONVERTIBLE and not Conv.NOT_CONVERTIBLE and not Conv.EXHAUSTED


@pytest.mark.parametrize("lhs,rhs", [
    ("{ a ≃ b }", "{ (λ x . x) a ≃ b }"),
    ("F a", "F ((λ x . x) a)"),
    ("Π x : { a ≃ a } . B", "Π x : { λ y . a y ≃ a } . B"),
])
def test_erasure_invariance(lhs, rhs):
    # swapping a leaf for a βη-equal one never breaks convertibility
    assert convert_types(Ty(lhs), Ty(rhs)) is Conv.CONVERTIBLE
    assert convert_types(Ty(rhs), Ty(lhs)) is Conv.CONVERTIBLE
