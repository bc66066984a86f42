"""
Persistence for search findings
"""
