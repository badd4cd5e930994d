"""Hybrid rule-based + CRF dependency parsing for Tamil text."""
