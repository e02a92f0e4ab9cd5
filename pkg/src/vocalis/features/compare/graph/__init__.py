"""
LangGraph workflow for per-vowel comparisons
"""
