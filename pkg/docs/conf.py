# -*- coding: utf-8 -*-
import inspect
import os
import sys

from sphinx.ext import apidoc

from flocknav import __version__ as version

package = "flocknav"
project = u"flocknav"
release = version
nitpicky = True

__location__ = os.path.join(
    os.getcwd(), os.path.dirname(inspect.getfile(inspect.currentframe()))
)

# Module reference pages are regenerated on every build
output_dir = os.path.abspath(os.path.join(__location__, "../docs/_rst"))
module_dir = os.path.abspath(os.path.join(__location__, "..", package))
apidoc.main(["-f", "-e", "-o", output_dir, module_dir])

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "sphinxext")))

extensions = [
    "ignore_missing_refs",
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.autosummary",
    "sphinx.ext.viewcode",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "IPython.sphinxext.ipython_console_highlighting",
    "IPython.sphinxext.ipython_directive",
]

# Numpy style docstrings only
napoleon_google_docstring = False

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"
exclude_patterns = ["_build"]
pygments_style = "sphinx"

html_theme = "sphinx_rtd_theme"
html_static_path = ["_static"]
htmlhelp_basename = "flocknav-doc"

python_version = ".".join(map(str, sys.version_info[0:2]))
intersphinx_mapping = {
    "python": ("https://docs.python.org/" + python_version, None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
    "pandas": ("https://pandas.pydata.org/pandas-docs/stable/", None),
    "matplotlib": ("https://matplotlib.org/stable/", None),
    "dask": ("https://docs.dask.org/en/latest/", None),
    "simplekv": ("https://simplekv.readthedocs.io/en/latest/", None),
}
