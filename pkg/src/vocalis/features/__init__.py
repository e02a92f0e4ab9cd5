"""
Feature modules for Vocalis.
"""
