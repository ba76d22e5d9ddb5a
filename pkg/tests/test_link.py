import pytest

from axiomforge import corpus
from axiomforge.pddl import LinkedTask, PddlError, link, parse_domain, parse_problem


def _codes(err):
    return {d.code for d in err.value.diagnostics}


def test_link_flagship(blocksworld, flagship):
    task = link(blocksworld, flagship)
    assert isinstance(task, LinkedTask)
    assert task.domain is blocksworld and task.problem is flagship


def test_domain_name_mismatch():
    hanoi = parse_domain(corpus.load("hanoi").domain_text)
    problem = parse_problem(
        "(define (problem p) (:domain gripper) (:objects a) (:init) (:goal (and)))"
    )
    with pytest.raises(PddlError) as err:
        link(hanoi, problem)
    assert _codes(err) == {"domain-name-mismatch"}


def test_init_arity_mismatch(blocksworld):
    problem = parse_problem(
        "(define (problem p) (:domain blocksworld) (:objects a b c)"
        " (:init (on a b c)) (:goal (and)))"
    )
    with pytest.raises(PddlError) as err:
        link(blocksworld, problem)
    assert "arity-mismatch" in _codes(err)


def test_undeclared_predicate(blocksworld):
    problem = parse_problem(
        "(define (problem p) (:domain blocksworld) (:objects a)"
        " (:init (levitating a)) (:goal (and)))"
    )
    with pytest.raises(PddlError) as err:
        link(blocksworld, problem)
    assert "undeclared-predicate" in _codes(err)


def test_undeclared_object_in_goal(blocksworld):
    problem = parse_problem(
        "(define (problem p) (:domain blocksworld) (:objects a)"
        " (:init) (:goal (and (on a ghost))))"
    )
    with pytest.raises(PddlError) as err:
        link(blocksworld, problem)
    assert "undeclared-object" in _codes(err)


def test_object_type_must_exist():
    depot = parse_domain(corpus.load("depot").domain_text)
    problem = parse_problem(
        "(define (problem p) (:domain depot) (:objects x - spaceship)"
        " (:init) (:goal (and)))"
    )
    with pytest.raises(PddlError) as err:
        link(depot, problem)
    assert "type-error" in _codes(err)


def test_argument_type_checked():
    depot = parse_domain(corpus.load("depot").domain_text)
    problem = parse_problem(
        "(define (problem p) (:domain depot) (:objects yard - depot arm - hoist)"
        " (:init (lifting yard arm)) (:goal (and)))"
    )
    with pytest.raises(PddlError) as err:
        link(depot, problem)
    assert "type-error" in _codes(err)


def test_subtypes_satisfy_supertypes():
    logistics = parse_domain(corpus.load("logistics").domain_text)
    problem = parse_problem(corpus.load("logistics").problem("air-freight").text)
    assert isinstance(link(logistics, problem), LinkedTask)  # airport counts as location


def test_object_colliding_with_constant():
    monkey = parse_domain(corpus.load("monkey").domain_text)
    problem = parse_problem(
        "(define (problem p) (:domain monkey) (:objects box p1)"
        " (:init (location p1)) (:goal (and)))"
    )
    with pytest.raises(PddlError) as err:
        link(monkey, problem)
    assert "duplicate-object" in _codes(err)
