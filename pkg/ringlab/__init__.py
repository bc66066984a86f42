"""
Clean Ring Lab - exhaustive finite-ring verification of clean, almost clean and Rickart structure
"""

__version__ = "1.0.0"
__author__ = "Clean Ring Lab Team"
__description__ = "Finite-ring laboratory for clean decompositions, (C1)-(C3) conditions and Rickart rings"
