"""Unit test package for ltlab."""
