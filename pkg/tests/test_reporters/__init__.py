"""Reporter tests"""
