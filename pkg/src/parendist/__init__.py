"""Dyck edit distance and RNA folding distance."""
