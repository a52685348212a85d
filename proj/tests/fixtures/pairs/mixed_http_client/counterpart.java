long timeout = 10000;
CloseableHttpClient client = HttpClients.createDefault();
HttpGet request = new HttpGet(uri);
CloseableHttpResponse response = client.execute(request);
