"""
Time-domain vowel synthesis
"""
