# Empty file to make utils a Python package
