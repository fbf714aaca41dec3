# Sphinx configuration for the edgekit API reference and cookbook gallery.

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))

import edgekit

project = 'edgekit'
copyright = '2026, edgekit developers'
author = 'edgekit developers'
version = release = edgekit.__version__

# napoleon renders the numpydoc sections, mathjax the formulas in them
extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'sphinx.ext.doctest',
    'sphinx_gallery.gen_gallery'
]

sphinx_gallery_conf = {
    'examples_dirs': '../../cookbook',
    'gallery_dirs': 'cookbook',
    'filename_pattern': '/',
}

autodoc_member_order = 'bysource'
templates_path = ['_templates']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
