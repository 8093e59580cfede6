"""Sized-type checking, termination gating and evaluation.

The core pipeline: `kinding` (polarized kinds), `normalize` (constructor
equality), `subtyping`, `continuity` (the admissibility gate), `typecheck`,
`reduction` (operational semantics), with `limits`/`lemmas` as the
finite-lattice oracle for the limit laws and `parser`/`driver`/`cli` as the
frontend.
"""

__version__ = "0.1.0"
