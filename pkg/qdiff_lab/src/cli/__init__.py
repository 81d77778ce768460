"""
Command-line modules.

This package contains the argparse front end and the pydantic models of
the JSON reports it writes.
"""
