"""Hand-written blocksworld rule variants used by the scripted proposer.

Both keep the original four actions untouched (so every original problem
stays solvable) and extend the move repertoire:

  * MULTI_LIFT adds a two-block tower pickup/stack pair, which solves the
    flagship restack instance in 2 steps;
  * MID_EXTRACT adds actions that pull a covered block out of a stack while
    the block above settles down, which solves the same instance in 4 steps.
"""

MULTI_LIFT = """\
(define (domain blocksworld)
    (:requirements :strips :equality)
    (:predicates
        (clear ?x)
        (on-table ?x)
        (arm-empty)
        (holding ?x)
        (on ?x ?y)
        (holding-pair ?top ?bottom)
    )

    (:action pickup
        :parameters (?ob)
        :precondition (and (clear ?ob) (on-table ?ob) (arm-empty))
        :effect (and (holding ?ob) (not (clear ?ob)) (not (on-table ?ob)) (not (arm-empty)))
    )

    (:action putdown
        :parameters (?ob)
        :precondition (and (holding ?ob))
        :effect (and (clear ?ob) (arm-empty) (on-table ?ob) (not (holding ?ob)))
    )

    (:action stack
        :parameters (?ob ?underob)
        :precondition (and (clear ?underob) (holding ?ob))
        :effect (and (arm-empty) (clear ?ob) (on ?ob ?underob) (not (clear ?underob)) (not (holding ?ob)))
    )

    (:action unstack
        :parameters (?ob ?underob)
        :precondition (and (on ?ob ?underob) (clear ?ob) (arm-empty))
        :effect (and (holding ?ob) (clear ?underob) (not (on ?ob ?underob)) (not (clear ?ob)) (not (arm-empty)))
    )

    (:action pickup-pair
        :parameters (?top ?bottom)
        :precondition (and (clear ?top) (on ?top ?bottom) (on-table ?bottom) (arm-empty))
        :effect (and (holding-pair ?top ?bottom) (not (clear ?top)) (not (on ?top ?bottom)) (not (on-table ?bottom)) (not (arm-empty)))
    )

    (:action stack-pair
        :parameters (?top ?bottom ?underob)
        :precondition (and (holding-pair ?top ?bottom) (clear ?underob))
        :effect (and (arm-empty) (clear ?top) (on ?top ?bottom) (on ?bottom ?underob) (not (clear ?underob)) (not (holding-pair ?top ?bottom)))
    )
)
"""

MID_EXTRACT = """\
(define (domain blocksworld)
    (:requirements :strips :equality)
    (:predicates
        (clear ?x)
        (on-table ?x)
        (arm-empty)
        (holding ?x)
        (on ?x ?y)
    )

    (:action pickup
        :parameters (?ob)
        :precondition (and (clear ?ob) (on-table ?ob) (arm-empty))
        :effect (and (holding ?ob) (not (clear ?ob)) (not (on-table ?ob)) (not (arm-empty)))
    )

    (:action putdown
        :parameters (?ob)
        :precondition (and (holding ?ob))
        :effect (and (clear ?ob) (arm-empty) (on-table ?ob) (not (holding ?ob)))
    )

    (:action stack
        :parameters (?ob ?underob)
        :precondition (and (clear ?underob) (holding ?ob))
        :effect (and (arm-empty) (clear ?ob) (on ?ob ?underob) (not (clear ?underob)) (not (holding ?ob)))
    )

    (:action unstack
        :parameters (?ob ?underob)
        :precondition (and (on ?ob ?underob) (clear ?ob) (arm-empty))
        :effect (and (holding ?ob) (clear ?underob) (not (on ?ob ?underob)) (not (clear ?ob)) (not (arm-empty)))
    )

    (:action extract-base
        :parameters (?ob ?above)
        :precondition (and (on ?above ?ob) (clear ?above) (on-table ?ob) (arm-empty))
        :effect (and (holding ?ob) (on-table ?above) (not (on ?above ?ob)) (not (on-table ?ob)) (not (arm-empty)))
    )

    (:action extract-middle
        :parameters (?ob ?above ?below)
        :precondition (and (on ?above ?ob) (clear ?above) (on ?ob ?below) (arm-empty))
        :effect (and (holding ?ob) (on ?above ?below) (not (on ?above ?ob)) (not (on ?ob ?below)) (not (arm-empty)))
    )
)
"""
