#!/usr/bin/env python
#
# ltlab documentation build configuration file.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

import ltlab

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode', 'sphinx.ext.mathjax']
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'ltlab'
copyright = "2023, Ênio Rodrigues"
author = "Ênio Rodrigues"
ltlab_doc = 'ltlab Documentation'

version = ltlab.__version__
release = ltlab.__version__

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'
autodoc_member_order = 'bysource'

html_theme = 'alabaster'
html_static_path = ['_static']
htmlhelp_basename = 'ltlabdoc'

latex_documents = [
    (master_doc, 'ltlab.tex', ltlab_doc, author, 'manual'),
]

man_pages = [
    (master_doc, 'ltlab', ltlab_doc, [author], 1)
]
