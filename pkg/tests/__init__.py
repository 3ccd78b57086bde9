"""Test suite for the off-center orbit toolkit."""
