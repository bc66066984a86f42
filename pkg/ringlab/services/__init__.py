"""
Classification, verification and search services
"""
