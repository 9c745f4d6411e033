"""Build script for pklab package."""

import setup_boilerplate


class Package(setup_boilerplate.Package):

    """Package metadata."""

    name = 'pklab'
    description = 'exact verification of pseudo-Kahler and neutral Calabi-Yau metrics' \
        ' on nilmanifolds'
    classifiers = [
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Natural Language :: English',
        'Operating System :: Microsoft :: Windows',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Mathematics']
    keywords = [
        'complex geometry', 'computer algebra', 'nilmanifolds', 'pseudo-Kahler',
        'Bott-Chern cohomology', 'Calabi-Yau', 'Levi-Civita connection']
    package_data = {'pklab': ['data/*.eqs', 'data/catalog.json']}
    entry_points = {'console_scripts': ['pklab = pklab.cli:main']}


if __name__ == '__main__':
    Package.setup()
