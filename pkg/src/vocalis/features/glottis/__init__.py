"""
Two-mass glottal source
"""
