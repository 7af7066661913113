"""Tests for io module"""
