# Maintenance scripts; run from the repo root as `python -m tools.<name>`.
