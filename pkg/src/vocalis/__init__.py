"""
Vocalis: vocal-tract resonance and formant toolkit.
"""
