"""
Area functions, tetrahedral meshes and their generators
"""
