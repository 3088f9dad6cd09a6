# -*- coding: utf-8 -*-
#
# divsamp documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

# Make the divsamp package importable for autodoc.
sys.path.insert(0, os.path.abspath('..'))
import divsamp

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.ifconfig',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'divsamp'
copyright = '2026, the divsamp developers'

version = divsamp.__version__
release = divsamp.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

html_theme = 'default'
html_static_path = []
htmlhelp_basename = 'divsampdoc'

# -- Options for manual page output ---------------------------------------

man_pages = [
    ('index', 'divsamp', 'divsamp Documentation',
     ['the divsamp developers'], 1)
]
