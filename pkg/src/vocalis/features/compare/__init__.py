"""
Method comparison harness
"""
