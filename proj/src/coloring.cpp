// temporary stubs so the library links while modules are written
