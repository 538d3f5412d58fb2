# Empty file to make core a Python package
