"""Representation type of Munn algebras and finite Rees matrix semigroups."""

__version__ = "0.1.0"
