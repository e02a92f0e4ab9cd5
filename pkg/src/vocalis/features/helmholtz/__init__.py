"""
3D Helmholtz resonances
"""
