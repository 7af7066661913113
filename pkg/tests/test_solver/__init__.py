"""Tests for solver module"""
