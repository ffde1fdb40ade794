# Copyright 2026 The Unistable Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Sphinx configuration of the unistable documentation.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

from pathlib import Path

_ROOT = Path(__file__).resolve().parent.parent


def _version() -> str:
    namespace = {}
    version_file = _ROOT / "unistable-core/src/unistable/core/version.py"
    exec(version_file.read_text(encoding="utf-8"), namespace)
    return namespace["__version__"]


# -- Project information -----------------------------------------------------

project = "Unistable"
copyright = "2026, The Unistable Authors"
author = "The Unistable Authors"
release = _version()
version = ".".join(release.split(".")[:2])


# -- General configuration ---------------------------------------------------

extensions = [
    # API doc generation
    "sphinx.ext.autodoc",
    # Stub pages for every name in the packages' __all__
    "sphinx.ext.autosummary",
    # Numpy-style Parameters/Returns sections
    "sphinx.ext.napoleon",
    # Infer types from hints instead of docstrings
    "sphinx_autodoc_typehints",
    # Add links to source from generated docs
    "sphinx.ext.viewcode",
    # Link to other sphinx docs
    "sphinx.ext.intersphinx",
    # Add a .nojekyll file to the generated HTML docs
    "sphinx.ext.githubpages",
]

intersphinx_mapping = {
    "python": ("https://docs.python.org/3/", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
    "pydantic": ("https://docs.pydantic.dev/latest/", None),
    "opentelemetry": (
        "https://opentelemetry-python.readthedocs.io/en/latest/",
        None,
    ),
}

autosummary_generate = True
# document the re-exports of unistable.core and unistable.harness
autosummary_ignore_module_all = False
autodoc_member_order = "bysource"
napoleon_google_docstring = False

templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store", "**/venv"]


# -- Options for HTML output -------------------------------------------------

html_theme = "alabaster"

html_theme_options = {
    "description": "Stability audits and generalization bounds",
    "github_repo": "unistable",
    "github_user": "unistable",
    "page_width": "1200px",
    "sidebar_width": "280px",
}

html_context = {
    "display_github": True,
    "github_user": "unistable",
    "github_repo": "unistable",
    "github_version": "main",
    "conf_py_path": "/docs/",
}
