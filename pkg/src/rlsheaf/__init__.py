"""Finite residuated lattices and their sheaf representation over the prime spectrum."""
