"""Exact-arithmetic tools for codimension-one polynomial foliations.

Everything here computes over the rationals with no floating point:
homogeneous integrable 1-forms on projective space, their singular sets and
Baum-Bott residues, blow-up reduction of plane germs, and the side structures
(closed logarithmic forms, projective triples, simple-singularity models)
that organize the examples.
"""

from __future__ import annotations

__version__ = "0.1.0"
