"""Step-counting operational and cost-instrumented denotational semantics
for a simply-typed lambda calculus and Modernized Algol, with a
differential harness relating the two."""

__version__ = "0.1.0"
