"""Non-deterministic matrix semantics for non-normal modal systems.

Sub-packages: syntax, nmatrix, semantics, propositional and proofcheck;
cli and routes expose them on the command line and over HTTP.
"""
