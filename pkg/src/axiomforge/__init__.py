"""Rule-evolution engine for PDDL games: parse, plan, rank, search, record."""

__version__ = "0.1.0"
