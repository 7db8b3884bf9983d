"""Document format, checks, instance generator and command line."""
