"""
LPC formant estimation and audio I/O
"""
