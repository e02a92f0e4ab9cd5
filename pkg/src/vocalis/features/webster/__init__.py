"""
Webster horn resonances and length scaling
"""
