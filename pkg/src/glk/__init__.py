"""Exact model of the complexified Grothendieck ring of projective
F_p GL_n(F_p)-modules, with torus-induction change of basis, graded
endomorphism spectra, Poincare series, and brute-force cross checks."""

__version__ = "0.1.0"
