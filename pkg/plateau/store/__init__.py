# Report cache
