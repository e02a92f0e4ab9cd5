"""
Shared infrastructure for Vocalis.
"""
