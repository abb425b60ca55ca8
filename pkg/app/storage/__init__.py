# Graph and layout file formats
