"""
Test package for PDF Redaction Service
"""
