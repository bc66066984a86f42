"""
Finite rings as operation tables: construction, validation, serialization and the ring description language
"""
