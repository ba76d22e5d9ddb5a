"""Authored problem instances for the embedded domains.

Every entry records the optimal plan length we expect; the test suite
re-derives each value with the planner's exhaustive search and an
independent brute-force oracle, so an instance cannot drift silently.
"""

PROBLEM_TEXTS = {
    "blocksworld": (
        (
            "restack",
            """\
(define (problem restack)
  (:domain blocksworld)
  (:objects a b c)
  (:init (on-table a) (on-table b) (on c b) (clear a) (clear c) (arm-empty))
  (:goal (and (on b a) (on c b))))
""",
            6,
        ),
        (
            "swap",
            """\
(define (problem swap)
  (:domain blocksworld)
  (:objects a b)
  (:init (on a b) (on-table b) (clear a) (arm-empty))
  (:goal (and (on b a))))
""",
            4,
        ),
    ),
    "briefcase": (
        (
            "deliver",
            """\
(define (problem deliver)
  (:domain briefcase)
  (:objects doc - portable home office - location)
  (:init (is-at home) (at doc home))
  (:goal (and (at doc office))))
""",
            2,
        ),
        (
            "deliver-and-return",
            """\
(define (problem deliver-and-return)
  (:domain briefcase)
  (:objects doc - portable home office - location)
  (:init (is-at home) (at doc home))
  (:goal (and (at doc office) (is-at home))))
""",
            4,
        ),
    ),
    "bulldozer": (
        (
            "walk",
            """\
(define (problem walk)
  (:domain bulldozer)
  (:objects pat dozer sitea siteb)
  (:init (person pat) (vehicle dozer) (mobile pat)
         (at pat sitea) (at dozer sitea)
         (road sitea siteb) (road siteb sitea))
  (:goal (and (at pat siteb))))
""",
            1,
        ),
        (
            "convoy",
            """\
(define (problem convoy)
  (:domain bulldozer)
  (:objects pat dozer sitea siteb)
  (:init (person pat) (vehicle dozer) (mobile pat)
         (at pat sitea) (at dozer sitea)
         (road sitea siteb) (road siteb sitea))
  (:goal (and (at pat siteb) (at dozer siteb))))
""",
            3,
        ),
    ),
    "casino": (
        (
            "one-prize",
            """\
(define (problem one-prize)
  (:domain casino)
  (:objects lobby tables - location toy - prize1)
  (:init (at lobby) (iscasino tables) (moveto tables) (getprize1 toy))
  (:goal (and (haveprize1 toy))))
""",
            2,
        ),
        (
            "two-prizes",
            """\
(define (problem two-prizes)
  (:domain casino)
  (:objects lobby tables - location toy - prize1 voucher - prize2)
  (:init (at lobby) (iscasino tables) (moveto tables)
         (getprize1 toy) (getprize2 voucher))
  (:goal (and (haveprize1 toy) (haveprize2 voucher))))
""",
            3,
        ),
    ),
    "depot": (
        (
            "lift-crate",
            """\
(define (problem lift-crate)
  (:domain depot)
  (:objects yard - depot arm - hoist box - crate base spare - pallet)
  (:init (at arm yard) (available arm)
         (at box yard) (at base yard) (at spare yard)
         (on box base) (clear box) (clear spare))
  (:goal (and (lifting arm box))))
""",
            1,
        ),
        (
            "shift-crate",
            """\
(define (problem shift-crate)
  (:domain depot)
  (:objects yard - depot arm - hoist box - crate base spare - pallet)
  (:init (at arm yard) (available arm)
         (at box yard) (at base yard) (at spare yard)
         (on box base) (clear box) (clear spare))
  (:goal (and (on box spare))))
""",
            2,
        ),
    ),
    "ferry": (
        (
            "carry-car",
            """\
(define (problem carry-car)
  (:domain ferry)
  (:objects sedan porta portb - obj boat - ferry)
  (:init (car sedan) (location porta) (location portb)
         (not-eq porta portb) (not-eq portb porta)
         (at sedan porta) (at-ferry porta) (empty-ferry boat)
         (board sedan) (debark sedan) (sail porta) (sail portb))
  (:goal (and (at sedan portb))))
""",
            3,
        ),
        (
            "reposition",
            """\
(define (problem reposition)
  (:domain ferry)
  (:objects sedan porta portb - obj boat - ferry)
  (:init (car sedan) (location porta) (location portb)
         (not-eq porta portb) (not-eq portb porta)
         (at sedan porta) (at-ferry porta) (empty-ferry boat)
         (board sedan) (debark sedan) (sail porta) (sail portb))
  (:goal (and (at-ferry portb))))
""",
            1,
        ),
    ),
    "gripper": (
        (
            "transport",
            """\
(define (problem transport)
  (:domain gripper)
  (:objects rooma roomb ball1 left right)
  (:init (room rooma) (room roomb) (ball ball1) (gripper left) (gripper right)
         (at-robby rooma) (at ball1 rooma) (free left) (free right))
  (:goal (and (at ball1 roomb))))
""",
            3,
        ),
        (
            "relocate",
            """\
(define (problem relocate)
  (:domain gripper)
  (:objects rooma roomb ball1 left right)
  (:init (room rooma) (room roomb) (ball ball1) (gripper left) (gripper right)
         (at-robby rooma) (at ball1 rooma) (free left) (free right))
  (:goal (and (at-robby roomb))))
""",
            1,
        ),
    ),
    "hanoi": (
        (
            "three-discs",
            """\
(define (problem three-discs)
  (:domain hanoi)
  (:objects d1 d2 d3 p1 p2 p3)
  (:init (smaller d2 d1) (smaller d3 d1) (smaller d3 d2)
         (smaller p1 d1) (smaller p1 d2) (smaller p1 d3)
         (smaller p2 d1) (smaller p2 d2) (smaller p2 d3)
         (smaller p3 d1) (smaller p3 d2) (smaller p3 d3)
         (on d3 p1) (on d2 d3) (on d1 d2)
         (clear d1) (clear p2) (clear p3))
  (:goal (and (on d3 p3) (on d2 d3) (on d1 d2))))
""",
            7,
        ),
        (
            "two-discs",
            """\
(define (problem two-discs)
  (:domain hanoi)
  (:objects d1 d2 p1 p2 p3)
  (:init (smaller d2 d1)
         (smaller p1 d1) (smaller p1 d2)
         (smaller p2 d1) (smaller p2 d2)
         (smaller p3 d1) (smaller p3 d2)
         (on d2 p1) (on d1 d2)
         (clear d1) (clear p2) (clear p3))
  (:goal (and (on d2 p3) (on d1 d2))))
""",
            3,
        ),
    ),
    "logistics": (
        (
            "in-town",
            """\
(define (problem in-town)
  (:domain logistics)
  (:objects pkg - package depot shop - location metro - city van - truck)
  (:init (in-city depot metro) (in-city shop metro)
         (at van depot) (at pkg depot))
  (:goal (and (at pkg shop))))
""",
            3,
        ),
        (
            "air-freight",
            """\
(define (problem air-freight)
  (:domain logistics)
  (:objects pkg - package east west - airport jet - airplane)
  (:init (at jet east) (at pkg east))
  (:goal (and (at pkg west))))
""",
            3,
        ),
    ),
    "maze": (
        (
            "one-step",
            """\
(define (problem one-step)
  (:domain maze)
  (:objects hero - player cell1 cell2 - location)
  (:init (at hero cell1) (clear cell2) (move-dir-right cell1 cell2))
  (:goal (and (at hero cell2))))
""",
            1,
        ),
        (
            "corner",
            """\
(define (problem corner)
  (:domain maze)
  (:objects hero - player cell1 cell2 cell3 - location)
  (:init (at hero cell1) (clear cell2) (clear cell3)
         (move-dir-right cell1 cell2) (move-dir-up cell2 cell3))
  (:goal (and (at hero cell3))))
""",
            2,
        ),
    ),
    "miconic": (
        (
            "ride-up",
            """\
(define (problem ride-up)
  (:domain miconic)
  (:objects ann - passenger ground top - floor)
  (:init (lift-at ground) (above ground top)
         (origin ann ground) (destin ann top)
         (board ground ann) (depart top ann)
         (up top) (down ground) (not-boarded ann) (not-served ann))
  (:goal (and (served ann))))
""",
            3,
        ),
        (
            "fetch-first",
            """\
(define (problem fetch-first)
  (:domain miconic)
  (:objects ann - passenger ground top - floor)
  (:init (lift-at top) (above ground top)
         (origin ann ground) (destin ann top)
         (board ground ann) (depart top ann)
         (up top) (down ground) (not-boarded ann) (not-served ann))
  (:goal (and (served ann))))
""",
            4,
        ),
    ),
    "monkey": (
        (
            "get-bananas",
            """\
(define (problem get-bananas)
  (:domain monkey)
  (:objects p1 p2 p3)
  (:init (location p1) (location p2) (location p3)
         (at monkey p1) (on-floor)
         (at box p2) (at knife p1) (at bananas p3))
  (:goal (and (hasbananas))))
""",
            5,
        ),
        (
            "get-water",
            """\
(define (problem get-water)
  (:domain monkey)
  (:objects p1 p2)
  (:init (location p1) (location p2)
         (at monkey p1) (on-floor)
         (at box p2) (at glass p1) (at waterfountain p2))
  (:goal (and (haswater))))
""",
            4,
        ),
    ),
}
