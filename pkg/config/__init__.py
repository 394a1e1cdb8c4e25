# Config layer - settings, constants
