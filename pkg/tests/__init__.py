# Tests - unit / integration
