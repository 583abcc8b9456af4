# Shared utilities
# Error hierarchy, CLI helpers and the worker pool used by grid audits
