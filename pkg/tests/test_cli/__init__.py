"""Tests for cli module"""
