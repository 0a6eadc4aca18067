"""Isomorphism of augmentations of link-graded Chekanov-Eliashberg dgas over GF(2^m)."""
