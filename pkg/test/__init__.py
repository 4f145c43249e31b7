"""Tests of the diagforge packages."""
