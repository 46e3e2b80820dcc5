"""Pipeline stages: generate, analyze and verify."""
