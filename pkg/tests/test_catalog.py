import pytest

from gradedflag.catalog import NAMES, abelian, by_name, check_entry, gl_blocks, sl_blocks

from conftest import entry


@pytest.mark.parametrize("name", NAMES)
def test_entries_are_valid(name):
    e = entry(name)
    assert check_entry(e) == []
    assert e.algebra.dim == sum(e.grading.layers[d].dim for d in e.grading.degrees)


@pytest.mark.parametrize("name,dim,k", [("sl2", 3, 1), ("gl(1,1)", 4, 1), ("gl(2,2)", 16, 1),
                                        ("gl(2,1,1)", 16, 2), ("sl(2,2)", 15, 1), ("abelian(3)", 3, 1)])
def test_dimensions(name, dim, k):
    e = entry(name)
    assert (e.algebra.dim, e.grading.k) == (dim, k)


def test_size_cap():
    with pytest.raises(ValueError):
        gl_blocks([4, 3])
    with pytest.raises(ValueError):
        sl_blocks([7])
    assert gl_blocks([4, 3], cap=7).algebra.dim == 49


def test_bad_names():
    with pytest.raises(KeyError):
        by_name("so(5)")
    with pytest.raises(ValueError):
        gl_blocks([2, 0])
    assert by_name(" gl( 2 , 2 ) ").algebra.dim == 16
    assert abelian(2, 2).grading.k == 2
