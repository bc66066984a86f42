"""
Utilities package for Clean Ring Lab
"""
