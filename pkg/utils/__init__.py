# Shared helpers: errors, logging, config loading, validation
