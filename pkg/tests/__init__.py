"""
Test suite for the Multi-hop Research Agent system.
"""

