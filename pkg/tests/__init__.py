"""Test suite for sqmk."""
