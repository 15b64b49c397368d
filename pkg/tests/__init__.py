"""Test for the Transfer Entropy Toolbox."""
