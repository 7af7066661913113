"""Tests for generators module"""
