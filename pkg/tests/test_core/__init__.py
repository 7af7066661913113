"""Tests for core module"""
