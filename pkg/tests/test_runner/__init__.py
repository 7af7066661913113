"""Tests for runner module"""
