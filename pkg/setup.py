from setuptools import setup, find_packages

setup(
    name='meclib',
    version='0.1.0',
    packages=find_packages(exclude=['examples', 'examples.*']),
    install_requires=['numpy', 'scipy', 'matplotlib', 'pandas'],
    description='Imitation learning and knowledge distillation for mobile-edge-cloud '
                'computation offloading.',
    entry_points={
        'console_scripts': [
            'meclib.gen = meclib.bin.gen:main',
            'meclib.train = meclib.bin.train:main',
            'meclib.distill = meclib.bin.distill:main',
            'meclib.eval = meclib.bin.evaluate:main',
            'meclib.bench = meclib.bin.bench:main',
            'meclib.repro = meclib.bin.repro:main',
        ]
    },
    platforms=["any"],
    license='BSD',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering',
        'License :: OSI Approved :: BSD License',
        'Programming Language :: Python :: 3',
    ]
)
