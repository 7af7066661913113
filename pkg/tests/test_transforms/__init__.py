"""Tests for transforms module"""
